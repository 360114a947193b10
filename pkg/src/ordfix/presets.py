"""Built-in instances: squaring on a symmetric interval and a finite grid version of it.

Squaring on ``[-1/3, 1/3]`` is comparable (the order is total) but neither
increasing nor decreasing, so it separates comparability-based hypothesis
lists from monotonicity-based ones.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .mappings import (
    Instance,
    MappingPair,
    RealMap,
    estimate_alpha,
    identity_map,
    is_comparable_map,
    is_monotone,
)
from .space import ContinuousIntervalSpace, FiniteOrderedMetricSpace, format_fraction

THIRD = Fraction(1, 3)
CONTRACTION_BOUND = Fraction(2, 3)  # sup |x + y| on [-1/3, 1/3]

# grid points, sorted; squaring is snapped down to the nearest grid point
GRID_POINTS = (Fraction(-1, 3), Fraction(0), Fraction(1, 81), Fraction(1, 9), Fraction(1, 3))


def square_interval(x0=THIRD) -> Instance:
    """``f(x) = x**2`` and ``g = id`` on ``[-1/3, 1/3]`` with the natural order."""
    space = ContinuousIntervalSpace(-THIRD, THIRD)
    declared = {
        "f_continuous": True,
        "g_continuous": True,
        "f_g_continuous": True,
        "compatible": True,
        "alpha": format_fraction(CONTRACTION_BOUND),
    }
    pair = MappingPair(RealMap("square"), RealMap("identity"), declared)
    return Instance(space, pair, x0=Fraction(x0), name="ex52")


def snap_down(value: Fraction, points=GRID_POINTS) -> int:
    """Index of the largest grid point not exceeding ``value``."""
    return max(i for i, p in enumerate(points) if p <= value)


def square_grid() -> Instance:
    """Five-point grid with ``f`` = squaring snapped down and ``g = id``.

    Exact contraction constant 4/9; the only fixed point is 0.
    """
    pts = GRID_POINTS
    n = len(pts)
    order = [[pts[i] <= pts[j] for j in range(n)] for i in range(n)]
    metric = [[abs(a - b) for b in pts] for a in pts]
    space = FiniteOrderedMetricSpace(order, metric, [format_fraction(p) for p in pts])
    f = [snap_down(p * p) for p in pts]
    return Instance(space, MappingPair(f, identity_map(n)), x0=n - 1, name="ex52-grid")


def singleton() -> Instance:
    space = FiniteOrderedMetricSpace([[True]], [[0]], ["p"])
    return Instance(space, MappingPair([0], [0]), name="singleton")


DEMOS = ("ex52", "ex52-grid", "rr-preset", "nrl-preset")
PRESET_HYPOTHESES = {"rr-preset": "RR", "nrl-preset": "NRL"}


def grid_contrast() -> dict[str, Any]:
    """Comparability, monotonicity and the exact contraction constant on the grid."""
    inst = square_grid()
    mono = is_monotone(inst.space, inst.f)
    alpha = estimate_alpha(inst.space, inst.pair)
    return {
        "comparable": is_comparable_map(inst.space, inst.f),
        "monotone": mono.monotone,
        "monotone_kind": mono.kind,
        "grid_alpha": alpha.alpha,
        "grid_alpha_exact": alpha.exact,
    }
