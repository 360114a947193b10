import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ordfix import presets
from ordfix import (
    ContinuousIntervalSpace,
    IndexMap,
    MappingPair,
    RealMap,
    commutation_suite,
    continuity_suite,
    estimate_alpha,
    is_comparable_map,
    is_g_comparable,
    is_g_monotone,
    is_injective,
    is_monotone,
    is_onto,
    parse_map,
    range_inclusion,
)
from ordfix.errors import ParseError
from ordfix.mappings import looks_continuous
from ordfix.space import closure_from_pairs
from ordfix.verdicts import Check, Verdict, all_of, any_of

from conftest import antichain, discrete_space, line_space

QUARTER_GRID = ["-1/3", "0", "1/9", "1/3"]


def squared_on(points):
    """Index map of x -> x**2 snapped down to the nearest point of ``points``."""
    pts = [Fraction(p) for p in points]
    return [presets.snap_down(p * p, pts) for p in pts]


# -- verdict helpers ----------------------------------------------------------


def test_verdict_combinators():
    h, f, v, a = Check.holds(), Check.fails(1), Check(Verdict.VACUOUS), Check(Verdict.ASSERTED)
    assert any_of(f, h).verdict is Verdict.HOLDS
    assert any_of(f, Check.fails(2)).witness == [1, 2]
    assert all_of(h, f).verdict is Verdict.FAILS
    assert all_of(v, v).verdict is Verdict.VACUOUS
    assert all_of(h, a).verdict is Verdict.ASSERTED
    assert all_of(h, v).verdict is Verdict.HOLDS
    assert bool(v) and bool(a) and not bool(f)


# -- comparability and monotonicity ------------------------------------------


def test_identity_is_comparable():
    assert is_comparable_map(antichain(3), [0, 1, 2])


def test_squaring_on_a_closed_grid_is_comparable_but_not_monotone():
    s = line_space(QUARTER_GRID)
    f = squared_on(QUARTER_GRID)
    assert f == [2, 1, 1, 2]  # 1/81 snaps down to 0
    assert is_comparable_map(s, f).verdict is Verdict.HOLDS
    m = is_monotone(s, f)
    assert m.kind == "neither"
    assert m.monotone.verdict is Verdict.FAILS
    x, y = m.increasing.witness
    assert s.leq(x, y) and not s.leq(f[x], f[y])


def test_snapped_five_point_grid_is_comparable_but_not_monotone(grid):
    assert list(grid.f) == squared_on(presets.GRID_POINTS) == [3, 1, 1, 2, 3]
    assert is_comparable_map(grid.space, grid.f).verdict is Verdict.HOLDS
    assert is_monotone(grid.space, grid.f).kind == "neither"


def test_crafted_comparable_pair_mapped_to_incomparable_pair():
    # 0 <= 1, 2 and 3 isolated; f sends the comparable pair (0, 1) onto (2, 3)
    s = discrete_space(closure_from_pairs(4, [(0, 1)]))
    c = is_comparable_map(s, [2, 3, 2, 3])
    assert not c and c.witness == (0, 1)


def test_constant_map_is_both_increasing_and_decreasing():
    assert is_monotone(line_space([0, 1, 2]), [1, 1, 1]).kind == "both"


def test_g_comparable_reductions():
    s = discrete_space(closure_from_pairs(4, [(0, 1), (2, 3)]))
    assert is_g_comparable(s, MappingPair([3, 3, 3, 3], [0, 2, 1, 3]))
    bad = is_g_comparable(s, MappingPair([0, 2, 0, 0], [1, 1, 1, 1]))
    assert not bad and bad.witness == (0, 1)


@given(st.integers(1, 6), st.data())
def test_g_identity_reduces_to_plain_predicates(n, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    perm = rng.sample(range(n), n)
    s = discrete_space(closure_from_pairs(n, [(perm[a], perm[b]) for a in range(n)
                                              for b in range(a + 1, n) if rng.random() < 0.5]))
    f = [rng.randrange(n) for _ in range(n)]
    pair = MappingPair(f, list(range(n)))
    assert is_g_comparable(s, pair) == is_comparable_map(s, f)
    assert is_g_monotone(s, pair).kind == is_monotone(s, f).kind
    cont = continuity_suite(s, pair)
    assert cont.f_g_continuous.verdict == cont.f_continuous.verdict


def test_monotone_implies_comparable_on_random_maps():
    rng = random.Random(5)
    for t in range(300):
        n = 1 + t % 7
        perm = rng.sample(range(n), n)
        s = discrete_space(closure_from_pairs(n, [(perm[a], perm[b]) for a in range(n)
                                                  for b in range(a + 1, n) if rng.random() < 0.5]))
        g = [rng.randrange(n) for _ in range(n)]
        f = [rng.randrange(n) for _ in range(n)]
        if is_g_monotone(s, MappingPair(f, g)):
            assert is_g_comparable(s, MappingPair(f, g))


def test_interval_square_monotonicity_and_comparability():
    s = ContinuousIntervalSpace("-1/3", "1/3")
    m = is_monotone(s, RealMap("square"))
    assert m.kind == "neither" and m.monotone.verdict is Verdict.FAILS
    x, y = m.increasing.witness
    assert x <= y and x * x > y * y
    assert is_comparable_map(s, RealMap("square")).verdict is Verdict.HOLDS
    assert is_monotone(ContinuousIntervalSpace(0, 1), RealMap("square")).kind == "increasing"


# -- ranges, injectivity ------------------------------------------------------


def test_range_inclusion_cases():
    s = antichain(3)
    assert range_inclusion(s, MappingPair([1, 2, 0], [1, 2, 0]))
    c = range_inclusion(s, MappingPair([2, 0, 0], [0, 0, 1]))
    assert not c and c.witness == {"x": 0, "fx": 2}
    assert range_inclusion(s, MappingPair([0, 0, 0], [0, 1, 1]), Y=[0, 1])
    c = range_inclusion(s, MappingPair([0, 0, 0], [0, 1, 1]), Y=[0, 2])
    assert not c and c.witness == {"y": 2}


def test_interval_range_by_image_arithmetic():
    s = ContinuousIntervalSpace("-1/3", "1/3")
    sq = RealMap("square")
    assert sq.image(s.lo, s.hi) == (0, Fraction(1, 9))
    assert range_inclusion(s, MappingPair(sq, RealMap("identity")))
    assert not range_inclusion(s, MappingPair(RealMap("identity"), sq))


def test_injective_and_onto():
    s = antichain(3)
    assert is_injective(s, [2, 0, 1]) and is_onto(s, [2, 0, 1])
    assert is_injective(s, [0, 0, 1]).witness == (0, 1)
    assert is_onto(s, [0, 0, 1]).witness == 2


# -- commutation ------------------------------------------------------------


def test_equal_maps_satisfy_every_commutation_notion():
    s = line_space([0, 1, 2])
    out = commutation_suite(s, MappingPair([1, 2, 2], [1, 2, 2]))
    assert all(bool(c) for c in out.as_dict().values())


def test_coincidence_point_without_commuting():
    # x = 0 is a coincidence point (f0 = g0 = 1) but g(f0) = 0 while f(g0) = 1
    s = line_space([0, 1, 2])
    out = commutation_suite(s, MappingPair([1, 1, 1], [1, 0, 2]))
    assert not out.weakly_compatible and out.weakly_compatible.witness == 0
    assert not out.compatible and not out.commuting


def test_no_coincidence_points_is_vacuous():
    s = line_space([0, 1])
    out = commutation_suite(s, MappingPair([1, 0], [0, 1]))
    assert out.weakly_compatible.verdict is Verdict.VACUOUS
    assert out.compatible.verdict is Verdict.VACUOUS


def test_commutation_ladder_on_random_pairs():
    rng = random.Random(9)
    for t in range(300):
        n = 1 + t % 6
        s = line_space(rng.sample(range(30), n))
        pair = MappingPair([rng.randrange(n) for _ in range(n)], [rng.randrange(n) for _ in range(n)])
        out = commutation_suite(s, pair)
        ladder = [out.commuting, out.weakly_commuting, out.compatible, out.weakly_compatible]
        for a, b in zip(ladder, ladder[1:]):
            assert not a or b


def test_interval_commutation():
    s = ContinuousIntervalSpace("-1/3", "1/3")
    out = commutation_suite(s, MappingPair(RealMap("square"), RealMap("identity")))
    assert out.commuting.verdict is Verdict.HOLDS
    out = commutation_suite(s, MappingPair(RealMap("square"), RealMap("affine", "1/2", "1/9")))
    assert not out.commuting


# -- continuity -------------------------------------------------------------


def test_finite_continuity():
    s = antichain(3)
    c = continuity_suite(s, MappingPair([0, 1, 2], [0, 0, 1]))
    assert c.f_continuous and c.g_continuous
    assert not c.f_g_continuous and c.f_g_continuous.witness == (0, 1)
    assert continuity_suite(s, MappingPair([2, 2, 1], [0, 0, 1])).f_g_continuous


def test_interval_continuity_follows_declarations():
    s = ContinuousIntervalSpace(0, 1)
    pair = MappingPair(RealMap("square"), RealMap("identity"), {"f_continuous": True, "g_continuous": True})
    c = continuity_suite(s, pair)
    assert c.f_continuous.verdict is Verdict.ASSERTED
    assert c.f_g_continuous.verdict is Verdict.ASSERTED
    undeclared = continuity_suite(s, MappingPair(RealMap("square"), RealMap("identity")))
    assert undeclared.f_continuous.verdict is Verdict.FAILS
    assert looks_continuous(np.square, 0, 1)
    assert not looks_continuous(np.sign, -1, 1)


# -- contraction constant ---------------------------------------------------


def test_constant_map_has_alpha_zero():
    est = estimate_alpha(line_space([0, 1, 2]), MappingPair([1, 1, 1], [0, 1, 2]))
    assert est.alpha == 0 and est.holds


def test_vacuous_alpha_on_an_antichain():
    est = estimate_alpha(antichain(3), MappingPair([1, 2, 0], [0, 1, 2]))
    assert est.alpha == 0 and est.holds and "vacuous" in est.note


def test_fiber_violation_has_no_contraction_constant():
    est = estimate_alpha(line_space([0, 1]), MappingPair([0, 1], [0, 0]))
    assert est.alpha is None and not est.holds and est.witness == (0, 1)


def test_exact_alpha_matches_brute_force_ratio():
    rng = random.Random(2)
    for t in range(100):
        n = 2 + t % 5
        s = line_space(rng.sample(range(40), n))
        g = rng.sample(range(n), n)
        f = [rng.randrange(n) for _ in range(n)]
        est = estimate_alpha(s, MappingPair(f, g))
        best = max(s.d(f[x], f[y]) / s.d(g[x], g[y]) for x in range(n) for y in range(n) if x != y)
        assert est.alpha == best and est.exact


def test_grid_alpha_is_four_ninths(grid):
    est = estimate_alpha(grid.space, grid.pair)
    assert est.alpha == Fraction(4, 9) and est.exact and est.holds


def test_sampled_alpha_approaches_two_thirds_from_below(interval):
    coarse = estimate_alpha(interval.space, interval.pair, grid=100).alpha
    fine = estimate_alpha(interval.space, interval.pair, grid=1000).alpha
    assert coarse < fine < 2 / 3
    assert fine >= 0.66


# -- built-in functions -----------------------------------------------------


def test_parse_map_and_inverse():
    assert parse_map("square") == RealMap("square")
    a = parse_map("affine(1/2, -1/4)")
    assert a(Fraction(1)) == Fraction(1, 4)
    assert a.inverse(Fraction(1, 4), Fraction(-1), Fraction(1)) == 1
    assert RealMap("square").inverse(Fraction(1, 9), Fraction(-1, 3), Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(ParseError):
        parse_map("cube")


def test_index_map_is_callable():
    m = IndexMap([2, 0, 1])
    assert m(0) == 2 and list(m) == [2, 0, 1]


def test_pair_validation():
    s = antichain(2)
    with pytest.raises(ValueError):
        MappingPair([0, 5], [0, 1]).validate(s)
    with pytest.raises(ValueError):
        MappingPair(RealMap("affine", 3, 0), RealMap("identity")).validate(ContinuousIntervalSpace(0, 1))
