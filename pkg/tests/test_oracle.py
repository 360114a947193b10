from fractions import Fraction

import pytest

from ordfix import GeneratorParams, check_hypotheses, enumerate_instance, falsify, generate, necessity, presets
from ordfix.errors import GenerationBudgetExceeded, NotFiniteSpace
from ordfix.io import dump_instance
from ordfix.oracle import (
    COMPARABLE_START,
    CONTRACTION,
    G_COMPARABLE,
    T33_FORCE,
    T43_FORCE,
    T45_FORCE,
    trial_params,
)
from ordfix.space import is_totally_ordered, validate_space

from conftest import line_space, make


def test_enumeration_basics():
    s = line_space([0, 1, 2])
    same = enumerate_instance(make(s, [2, 0, 0], [2, 0, 0]))
    assert same.coincidence_points == {0, 1, 2} and same.points_of_coincidence == {0, 2}
    ident = enumerate_instance(make(s, [0, 1, 2]))
    assert ident.common_fixed_points == {0, 1, 2}


def test_enumeration_of_the_grid(grid):
    o = enumerate_instance(grid)
    assert o.coincidence_points == o.points_of_coincidence == o.common_fixed_points == {1}


def test_enumeration_needs_a_finite_space(interval):
    with pytest.raises(NotFiniteSpace):
        enumerate_instance(interval)


def test_common_fixed_points_are_coincidence_points():
    for t in range(200):
        o = enumerate_instance(generate(GeneratorParams(n=1 + t % 6, seed=t)))
        assert o.common_fixed_points <= o.coincidence_points
        assert o.common_fixed_points <= o.points_of_coincidence


def test_singleton_generation():
    inst = generate(GeneratorParams(n=1, force=T45_FORCE))
    assert check_hypotheses(inst, "T45").ok
    assert inst.space.n == 1


def test_generation_is_deterministic():
    p = GeneratorParams(n=7, seed=1234, force=T33_FORCE)
    assert dump_instance(generate(p)) == dump_instance(generate(p))
    assert dump_instance(generate(p)) != dump_instance(generate(GeneratorParams(n=7, seed=1235, force=T33_FORCE)))


def test_full_density_gives_a_total_order():
    for seed in range(30):
        assert is_totally_ordered(generate(GeneratorParams(n=6, seed=seed, edge_density=1)).space)


def test_generated_spaces_revalidate():
    for seed in range(100):
        s = generate(GeneratorParams(n=1 + seed % 8, seed=seed, force=T33_FORCE)).space
        validate_space(s.order, s.metric)


@pytest.mark.parametrize("theorem, force", [("T33", T33_FORCE), ("T43", T43_FORCE), ("T45", T45_FORCE)])
def test_forced_instances_pass_their_hypothesis_list(theorem, force):
    for t in range(150):
        inst = generate(trial_params(GeneratorParams(n=8, seed=77), t, force))
        report = check_hypotheses(inst, theorem)
        assert report.ok, [e.id for e in report.failed()]


def test_budget_exhaustion_names_the_constraint():
    # an antichain has no comparable start unless some g(x) = f(x); with a tiny budget this runs dry
    with pytest.raises(GenerationBudgetExceeded) as e:
        generate(GeneratorParams(n=8, seed=0, edge_density=0, force={COMPARABLE_START, "U0"}, budget=5))
    assert e.value.constraint in ("COMPARABLE_START", "U0")


def test_params_validation():
    with pytest.raises(ValueError):
        GeneratorParams(n=0)
    with pytest.raises(ValueError):
        GeneratorParams(edge_density=Fraction(3, 2))
    with pytest.raises(ValueError):
        GeneratorParams(force={"NOPE"})


@pytest.mark.parametrize("theorem", ["T33", "T35", "T43", "T45"])
def test_short_falsification_runs_are_clean(theorem):
    out = falsify(theorem, 300, GeneratorParams(n=8, seed=42))
    assert not out.found and out.checked == 300 and out.filtered == 0


@pytest.mark.parametrize("dropped", [G_COMPARABLE, CONTRACTION, COMPARABLE_START])
def test_dropping_a_hypothesis_admits_instances_without_coincidence(dropped):
    hits = necessity("T33", dropped, 300)
    assert hits
    for _, inst in hits:
        assert not enumerate_instance(inst).coincidence_points


def test_grid_enumeration_matches_the_preset():
    inst = presets.square_grid()
    assert enumerate_instance(inst).coincidence_points == {presets.GRID_POINTS.index(0)}
