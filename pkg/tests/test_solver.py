from fractions import Fraction

import pytest

from ordfix import (
    SolverConfig,
    Status,
    a_priori_bound,
    enumerate_instance,
    joint_iterate,
    promote_to_common_fixed_point,
    presets,
    solve,
)
from ordfix.errors import (
    AlphaOutOfRange,
    HypothesesFailed,
    MaxIterExceeded,
    NoComparableStart,
    NotWeaklyCompatible,
    PreimageNotFound,
)
from ordfix.mappings import MappingPair
from ordfix.oracle import T33_FORCE, T35_FORCE, GeneratorParams, generate, trial_params
from ordfix.solver import find_start, select_representatives
from ordfix.space import closure_from_pairs

from conftest import antichain, discrete_space, line_space, make


def test_representatives_lowest_index_per_fiber():
    s = antichain(5)
    assert select_representatives(s, [4, 3, 2, 1, 0]) == [0, 1, 2, 3, 4]
    assert select_representatives(s, [2, 2, 2, 2, 2]) == [0]
    assert select_representatives(s, [0, 1, 0, 3, 3]) == [0, 1, 3]


def test_find_start():
    s = line_space([0, 1, 2])
    assert find_start(s, MappingPair([2, 0, 1], [0, 1, 2])) == 0
    assert find_start(antichain(3), MappingPair([1, 2, 0], [1, 2, 0])) == 0
    assert find_start(antichain(3), MappingPair([1, 2, 0], [0, 1, 2])) is None


def test_a_priori_bound():
    assert a_priori_bound(0, Fraction(1, 2), 7) == 0
    assert a_priori_bound(Fraction(2, 9), Fraction(2, 3), 0) == Fraction(2, 3)
    assert a_priori_bound(Fraction(2, 9), Fraction(2, 3), 2) == Fraction(8, 27)
    with pytest.raises(AlphaOutOfRange):
        a_priori_bound(1, 1, 0)


def test_interval_iterates_square_down_to_zero(interval):
    tr = joint_iterate(interval.space, interval.pair, Fraction(1, 3), SolverConfig(), alpha=2 / 3)
    assert tr.iterates[:4] == pytest.approx([1 / 3, 1 / 9, 1 / 81, 1 / 6561], rel=1e-15)
    assert tr.status is Status.CONVERGED_TOL and abs(tr.point) < 1e-12


def test_interval_run_needs_a_valid_alpha(interval):
    with pytest.raises(AlphaOutOfRange):
        joint_iterate(interval.space, interval.pair, Fraction(1, 3), SolverConfig(), alpha=None)


def test_start_at_a_coincidence_point_takes_zero_steps(grid):
    tr = joint_iterate(grid.space, grid.pair, 1, SolverConfig())
    assert tr.status is Status.COINCIDENCE_FOUND and tr.n_steps == 0 and tr.point == 1


def test_grid_trace_is_frozen(grid):
    tr = solve(grid).trace
    assert tr.iterates == [4, 3, 2, 1, 1]
    assert tr.distances == [Fraction(2, 9), Fraction(8, 81), Fraction(1, 81), 0]
    assert tr.point == 1 and tr.value == 1


def test_square_interval_under_the_fixed_point_list(interval):
    res = solve(interval, SolverConfig(hypotheses="C51"))
    assert res.report.ok and res.theorem == "C51"
    assert abs(res.point) < 1e-12


def test_gate_names_g_comparability():
    # g-values 0 <= 1 are comparable; f sends them to the incomparable pair 2, 3
    s = discrete_space(closure_from_pairs(4, [(0, 1)]), 1)
    inst = make(s, [2, 3, 2, 3], [0, 1, 2, 3])
    with pytest.raises(HypothesesFailed) as e:
        solve(inst)
    assert "T33.ii" in [x.id for x in e.value.report.failed()]


def test_runtime_sentinel_for_incomparable_steps():
    # 0 <= 1, 2 isolated; f: 0 -> 1 -> 2
    s = discrete_space(closure_from_pairs(3, [(0, 1)]))
    tr = solve(make(s, [1, 2, 2], x0=0), SolverConfig(verify_hypotheses_first=False)).trace
    assert tr.status is Status.HYPOTHESIS_BROKEN and tr.reason.startswith("MonotonicityBroken")
    assert tr.offending == (1, 2)


def test_runtime_sentinel_for_slow_decay():
    s = line_space([0, 1, 2, 10])
    tr = solve(make(s, [1, 3, 3, 3], x0=0),
               SolverConfig(verify_hypotheses_first=False, alpha=Fraction(1, 2))).trace
    assert tr.status is Status.HYPOTHESIS_BROKEN and tr.reason.startswith("DecayBroken")


def test_missing_preimage_is_reported():
    s = line_space([0, 1, 2])
    with pytest.raises(PreimageNotFound):
        solve(make(s, [2, 2, 2], [0, 1, 1], x0=0), SolverConfig(verify_hypotheses_first=False))


def test_incomparable_start_is_rejected():
    with pytest.raises(NoComparableStart):
        joint_iterate(antichain(2), MappingPair([1, 0], [0, 1]), 0)


def test_cycle_hits_the_iteration_cap():
    res = solve(make(line_space([0, 1]), [1, 0], x0=0), SolverConfig(max_iter=10, verify_hypotheses_first=False))
    assert res.trace.status is Status.MAX_ITER and res.trace.n_steps == 10
    with pytest.raises(MaxIterExceeded):
        res.trace.raise_for_status()


@pytest.mark.parametrize("theorem, force", [("T33", T33_FORCE), ("T35", T35_FORCE)])
def test_solver_lands_in_the_oracle_set(theorem, force):
    for t in range(200):
        inst = generate(trial_params(GeneratorParams(n=7, seed=500), t, force))
        res = solve(inst, SolverConfig(theorem_path=theorem))
        assert res.trace.status is Status.COINCIDENCE_FOUND
        assert res.point in enumerate_instance(inst).coincidence_points


def test_promotion():
    s = line_space([0, 1, 2])
    assert promote_to_common_fixed_point(make(s, [0, 1, 2]), 2) == 2
    grid = presets.square_grid()
    assert promote_to_common_fixed_point(grid, 1) == 1
    # coincidence at 0 (f0 = g0 = 1) but g(f0) = 0 != f(g0) = 1
    with pytest.raises(NotWeaklyCompatible):
        promote_to_common_fixed_point(make(s, [1, 1, 1], [1, 0, 2]), 0)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(max_iter=0)
    with pytest.raises(ValueError):
        SolverConfig(theorem_path="T99")
