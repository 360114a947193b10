from fractions import Fraction

import pytest

from ordfix import (
    Chain,
    ContinuousIntervalSpace,
    Instance,
    MappingPair,
    Mode,
    RealMap,
    certify,
    chain_convergence_trace,
    check_u0,
    check_u0_reductions,
    enumerate_instance,
    presets,
)
from ordfix.errors import ConditionMissing, LadderBroken, NoChain, NotCoincidencePoints
from ordfix.space import closure_from_pairs
from ordfix.verdicts import Verdict

from conftest import antichain, discrete_space, line_space, make


# -- (u0) -----------------------------------------------------------------------


def test_u0_on_a_total_order_uses_two_chains():
    s = line_space([0, 1, 2])
    c = check_u0(s, MappingPair([2, 0, 1], [0, 1, 2]))
    assert c.verdict is Verdict.HOLDS
    assert all(len(ch) == 2 for ch in c.witness.values())


def test_u0_with_f_inside_one_component():
    # components {0 <= 1} and {2 <= 3}; f lands in the first
    s = discrete_space(closure_from_pairs(4, [(0, 1), (2, 3)]))
    assert check_u0(s, MappingPair([0, 1, 1, 0], [0, 1, 2, 3]))


def test_u0_fails_across_components():
    s = discrete_space(closure_from_pairs(4, [(0, 1), (2, 3)]))
    c = check_u0(s, MappingPair([0, 0, 2, 2], [0, 1, 2, 3]))
    assert not c and c.witness == (0, 2)


def test_u0_chain_must_stay_inside_g_image():
    # 0 <= 2 >= 1: the bridge 2 is not a g-value
    s = discrete_space(closure_from_pairs(3, [(0, 2), (1, 2)]))
    assert not check_u0(s, MappingPair([0, 1, 1], [0, 1, 1]))
    assert check_u0(s, MappingPair([0, 1, 1], [0, 1, 2]))


def test_reductions():
    s = line_space([0, 1, 2])
    r = check_u0_reductions(s, MappingPair([0, 2, 1], [0, 1, 2]))
    assert r.applied == "u0^1" and all(len(c) == 2 for c in r.total.witness.values())

    # vee 0 <= 1, 0 <= 2: f-values 1 and 2 are incomparable but both sit above g(z) = 0
    vee = discrete_space(closure_from_pairs(3, [(0, 1), (0, 2)]))
    r = check_u0_reductions(vee, MappingPair([1, 2, 0], [0, 1, 2]))
    assert not r.total and r.applied == "u0^2" and r.u0
    assert r.directed.witness[(0, 1)].nodes == (1, 0, 2)

    r = check_u0_reductions(antichain(2), MappingPair([0, 1], [0, 1]))
    assert not r.total and not r.directed and not r.u0 and r.applied is None


# -- chain contraction ----------------------------------------------------------


def test_equal_points_give_a_zero_trace(grid):
    tr = chain_convergence_trace(grid, 1, 1, n_max=10)
    assert tr.chain.degenerate and all(m == 0 for m in tr.majorants)


def test_zero_trace_on_the_interval(interval):
    tr = chain_convergence_trace(interval, Fraction(0), Fraction(0), n_max=5)
    assert tr.majorants == [0] * 6


def test_detour_chain_collapses_geometrically(grid):
    # 0 <> 1/3 <> 0 through the g-value 1/3 (index 4)
    tr = chain_convergence_trace(grid, 1, 1, n_max=5, chain=Chain((1, 4, 1)))
    assert tr.t[:4] == [[Fraction(1, 3)] * 2, [Fraction(1, 9)] * 2, [Fraction(1, 81)] * 2, [0, 0]]
    assert tr.z[1] == [1, 3, 1]
    assert not tr.decay_violations
    assert tr.majorants[-1] == 0


def test_ladder_break_is_located():
    # 0 <= 1, 0 <= 2, 3 isolated; f(1) = 3 leaves the component of 0
    s = discrete_space(closure_from_pairs(4, [(0, 1), (0, 2)]))
    inst = make(s, [0, 3, 2, 3])
    with pytest.raises(LadderBroken) as e:
        chain_convergence_trace(inst, 0, 0, chain=Chain((0, 1, 0)))
    assert (e.value.n, e.value.i) == (1, 1)


def test_trace_input_checks(grid):
    with pytest.raises(NotCoincidencePoints):
        chain_convergence_trace(grid, 4, 1)
    with pytest.raises(NoChain):
        chain_convergence_trace(grid, 1, 1, chain=Chain((1, 2, 4)))


# -- certificates ---------------------------------------------------------------


def test_grid_certifies_a_unique_common_fixed_point(grid):
    cert = certify(grid, "common-fixed")
    assert cert.conclusion == "UNIQUE_COMMON_FIXED_POINT" and cert.point == 1
    assert cert.oracle_checked and cert.verify(grid)
    assert cert.condition_used == ["u0^1", "u2"]


def test_interval_certifies_zero(interval):
    cert = certify(interval, Mode.COMMON_FIXED)
    assert cert.conclusion == "UNIQUE_COMMON_FIXED_POINT" and abs(cert.point) < 1e-12
    assert not cert.oracle_checked


def test_shared_value_grants_poc_but_refuses_coincidence():
    s = line_space([0, 1, 2])
    inst = make(s, [0, 0, 0], [0, 0, 2])
    oracle = enumerate_instance(inst)
    assert oracle.coincidence_points == {0, 1} and oracle.points_of_coincidence == {0}
    assert certify(inst, "poc").point == 0
    with pytest.raises(ConditionMissing) as e:
        certify(inst, "coincidence")
    assert e.value.condition == "u1"


def test_injective_f_grants_both_certificates():
    space = ContinuousIntervalSpace(0, 1)
    inst = Instance(space, MappingPair(RealMap("affine", "1/2", 0), RealMap("identity")), x0=Fraction(1))
    assert certify(inst, "poc").conclusion == "UNIQUE_POC"
    cert = certify(inst, "coincidence")
    assert cert.conclusion == "UNIQUE_COINCIDENCE_POINT" and abs(cert.point) < 1e-12
    single = presets.singleton()
    assert certify(single, "coincidence").point == 0


def test_missing_u0_is_named():
    with pytest.raises(ConditionMissing) as e:
        certify(make(antichain(2), [0, 1]), "poc")
    assert e.value.condition == "u0"


def test_missing_weak_compatibility_is_named():
    # coincidence points 0 and 2 share the value 1; g(f(0)) = g(1) = 2 but f(g(0)) = f(1) = 1
    s = line_space([0, 1, 2])
    inst = make(s, [1, 1, 1], [1, 2, 1])
    assert enumerate_instance(inst).coincidence_points == {0, 2}
    with pytest.raises(ConditionMissing) as e:
        certify(inst, "common-fixed")
    assert e.value.condition == "u2"


def test_mode_parsing():
    assert Mode.parse("common-fixed") is Mode.COMMON_FIXED
    assert Mode.parse("poc") is Mode.POC
    assert Mode.parse("coincidence_point") is Mode.COINCIDENCE
