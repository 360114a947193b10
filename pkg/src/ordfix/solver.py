"""Constructive existence: joint iteration ``g(x_{n+1}) = f(x_n)`` with runtime sentinels.

Finite runs are exact and stop when two consecutive g-values coincide;
interval runs are in floating point and stop by the a-priori tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .errors import (
    AlphaOutOfRange,
    DecayBroken,
    HypothesesFailed,
    MaxIterExceeded,
    MonotonicityBroken,
    NoComparableStart,
    NotCoincidencePoints,
    NotWeaklyCompatible,
    PreimageNotFound,
    PromotionFailed,
    UniquenessNotCertified,
)
from .mappings import DEFAULT_GRID, AlphaEstimate, Instance, MappingPair, commutation_suite
from .space import Space, as_fraction
from .theorems import Facts, HypothesisReport, check_hypotheses


class Status(str, Enum):
    COINCIDENCE_FOUND = "COINCIDENCE_FOUND"
    CONVERGED_TOL = "CONVERGED_TOL"
    MAX_ITER = "MAX_ITER"
    HYPOTHESIS_BROKEN = "HYPOTHESIS_BROKEN"


LOWEST_INDEX = "LOWEST_INDEX"
NEWTON_FREE_INVERSE = "NEWTON_FREE_INVERSE"


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for :func:`solve`.

    ``hypotheses`` overrides the gate's theorem list (``"RR"``, ``"C51"``,
    ...) while the iteration itself still follows ``theorem_path``.
    """

    max_iter: int = 10_000
    tol: float = 1e-12
    verify_hypotheses_first: bool = True
    preimage_policy: str | None = None
    theorem_path: str = "T33"
    hypotheses: str | None = None
    alpha: Any = None
    x0: Any = None
    grid: int = DEFAULT_GRID

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")
        if self.theorem_path not in ("T33", "T35"):
            raise ValueError("theorem_path must be 'T33' or 'T35'")
        if self.preimage_policy not in (None, LOWEST_INDEX, NEWTON_FREE_INVERSE):
            raise ValueError(f"unknown preimage policy {self.preimage_policy!r}")


@dataclass
class IterationTrace:
    """Record of one joint-iteration run.

    ``iterates[n]`` is ``x_n``, ``gvalues[n]`` is ``g(x_n)`` and
    ``distances[n]`` is ``d(g x_n, g x_{n+1})``.
    """

    x0: Any
    alpha_used: Any
    exact: bool
    iterates: list = field(default_factory=list)
    gvalues: list = field(default_factory=list)
    distances: list = field(default_factory=list)
    status: Status = Status.MAX_ITER
    reason: str = ""
    offending: Any = None
    point: Any = None
    value: Any = None

    @property
    def steps(self) -> list[tuple]:
        """``(n, x_n, g(x_{n+1}), d_n)`` for every recorded step."""
        return [(n, self.iterates[n], self.gvalues[n + 1], d) for n, d in enumerate(self.distances)]

    @property
    def n_steps(self) -> int:
        return len(self.distances)

    @property
    def ok(self) -> bool:
        return self.status in (Status.COINCIDENCE_FOUND, Status.CONVERGED_TOL)

    def raise_for_status(self) -> None:
        if self.status is Status.MAX_ITER:
            raise MaxIterExceeded(f"no coincidence after {self.n_steps} steps")
        if self.status is Status.HYPOTHESIS_BROKEN:
            exc = DecayBroken if self.reason.startswith("DecayBroken") else MonotonicityBroken
            raise exc(f"{self.reason} at {self.offending}")


def select_representatives(space: Space, g) -> list[int]:
    """One element per distinct g-value (lowest index wins), so ``g`` is one-one on it."""
    rep: dict[int, int] = {}
    for x in space.elements:
        rep.setdefault(g[x], x)
    return sorted(rep.values())


def find_start(space: Space, pair: MappingPair, grid: int = DEFAULT_GRID):
    """Lowest-index ``x0`` with ``g(x0) <> f(x0)``, or ``None``."""
    f, g = pair.f, pair.g
    if not space.is_finite:
        return space.lo  # total order: every point qualifies
    comp = space.comp
    for x in space.elements:
        if comp[g[x], f[x]]:
            return x
    return None


def a_priori_bound(d0, alpha, n: int):
    """Tail bound ``alpha**n / (1 - alpha) * d0`` on ``d(g x_n, g x_m)`` for all ``m > n``."""
    if not 0 <= alpha < 1:
        raise AlphaOutOfRange(f"alpha = {alpha} is outside [0, 1)")
    if d0 < 0 or n < 0:
        raise ValueError("need d0 >= 0 and n >= 0")
    return alpha ** n / (1 - alpha) * d0


def _ulps_le(a: float, b: float, ulps: int = 4) -> bool:
    return a <= b + ulps * math.ulp(b)


def joint_iterate(space: Space, pair: MappingPair, x0, config: SolverConfig = SolverConfig(),
                  alpha=None, representatives=None) -> IterationTrace:
    """Run ``g(x_{n+1}) = f(x_n)`` from ``x0``.

    Each step asserts comparability of consecutive g-values and, for
    ``n >= 1``, ``d_n <= alpha * d_{n-1}``; a violation ends the run with
    ``HYPOTHESIS_BROKEN`` instead of producing a wrong answer.
    ``representatives`` confines iterates to a set on which ``g`` is
    one-one (the T35 route).

    Raises
    ------
    NoComparableStart
        ``g(x0)`` and ``f(x0)`` are incomparable.
    PreimageNotFound
        Some ``f(x_n)`` lies outside ``g(X)``.
    AlphaOutOfRange
        An interval run needs ``alpha`` in ``[0, 1)`` for its stopping rule.
    """
    f, g = pair.f, pair.g
    finite = space.is_finite
    space.check(x0)
    if not finite:
        x0 = float(x0)
        if alpha is None or not 0 <= alpha < 1:
            raise AlphaOutOfRange(f"interval runs need alpha in [0, 1), got {alpha}")
        alpha = float(alpha)
        lo, hi = space.lo, space.hi

        def pre(y):
            return g.inverse(y, lo, hi)
    else:
        rep: dict[int, int] = {}
        for x in space.elements:
            rep.setdefault(g[x], x)
        pre = rep.get
    allowed = None if representatives is None else frozenset(representatives)

    gx, fx = g(x0), f(x0)
    if not space.comparable(gx, fx):
        raise NoComparableStart(f"g({x0}) = {gx} and f({x0}) = {fx} are incomparable")
    trace = IterationTrace(x0, alpha, finite, [x0], [gx])
    if gx == fx:
        trace.status, trace.point, trace.value = Status.COINCIDENCE_FOUND, x0, gx
        return trace

    x = x0
    for n in range(config.max_iter):
        target = f(x)
        nxt = pre(target)
        if nxt is None:
            raise PreimageNotFound(f"f({x}) = {target} has no g-preimage")
        if allowed is not None and nxt not in allowed:
            raise PreimageNotFound(f"preimage {nxt} of {target} is not a representative")
        g_next = g(nxt)
        d_n = space.d(gx, g_next)
        trace.iterates.append(nxt)
        trace.gvalues.append(g_next)
        trace.distances.append(d_n)

        if not space.comparable(gx, g_next):
            return _broken(trace, "MonotonicityBroken: consecutive g-values incomparable", (gx, g_next))
        if n >= 1 and alpha is not None:
            prev = trace.distances[-2]
            ok = d_n <= alpha * prev if finite else _ulps_le(d_n, alpha * prev)
            if not ok:
                return _broken(trace, "DecayBroken: d_n > alpha * d_{n-1}", (n, d_n, prev))

        if d_n == 0:
            trace.status, trace.point, trace.value = Status.COINCIDENCE_FOUND, x, gx
            return trace
        if not finite and d_n <= config.tol * (1 - alpha):
            trace.status, trace.point, trace.value = Status.CONVERGED_TOL, nxt, g_next
            return trace
        x, gx = nxt, g_next
    trace.status = Status.MAX_ITER
    return trace


def _broken(trace: IterationTrace, reason: str, offending) -> IterationTrace:
    trace.status, trace.reason, trace.offending = Status.HYPOTHESIS_BROKEN, reason, offending
    return trace


@dataclass
class SolveResult:
    instance: Instance
    trace: IterationTrace
    report: HypothesisReport
    alpha: AlphaEstimate
    theorem: str

    @property
    def ok(self) -> bool:
        return self.trace.ok

    @property
    def point(self):
        return self.trace.point

    @property
    def value(self):
        return self.trace.value


def _alpha_for_run(instance: Instance, config: SolverConfig, est: AlphaEstimate):
    raw = config.alpha if config.alpha is not None else instance.declared.get("alpha")
    if raw is None:
        return est.alpha
    return as_fraction(raw) if instance.space.is_finite else float(as_fraction(raw))


def solve(instance: Instance, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Hypothesis gate, start selection and joint iteration in one call.

    Raises
    ------
    HypothesesFailed
        ``verify_hypotheses_first`` is set and a required hypothesis fails.
    NoComparableStart, PreimageNotFound, AlphaOutOfRange
        Propagated from :func:`joint_iterate`.
    MaxIterExceeded
        A verified instance did not terminate; this indicates a bug.
    """
    space, pair = instance.space, instance.pair
    facts = Facts(instance, config.grid)
    theorem = config.hypotheses or config.theorem_path
    report = check_hypotheses(instance, theorem, facts=facts)
    if config.verify_hypotheses_first and not report.ok:
        raise HypothesesFailed(report)

    est = facts.alpha
    alpha = _alpha_for_run(instance, config, est)
    x0 = config.x0 if config.x0 is not None else instance.x0
    if x0 is None:
        x0 = find_start(space, pair, config.grid)
        if x0 is None:
            raise NoComparableStart("no x with g(x) <> f(x)")
    elif not space.is_finite:
        x0 = as_fraction(x0)

    reps = select_representatives(space, pair.g) if config.theorem_path == "T35" and space.is_finite else None
    trace = joint_iterate(space, pair, x0, config, alpha, reps)
    if trace.status is Status.MAX_ITER and config.verify_hypotheses_first and space.is_finite:
        trace.raise_for_status()
    return SolveResult(instance, trace, report, est, report.theorem)


def promote_to_common_fixed_point(instance: Instance, x, tol: float = 1e-12):
    """Turn a coincidence point into the common fixed point ``g(x) = f(x)``.

    Requires weak compatibility and (u0); the value ``g(x)`` must then be a
    coincidence point that ``g`` fixes.
    """
    from .uniqueness import check_u0

    space, pair = instance.space, instance.pair
    f, g = pair.f, pair.g
    if not commutation_suite(space, pair).weakly_compatible:
        raise NotWeaklyCompatible("f and g do not commute at some coincidence point")
    if not check_u0(space, pair):
        raise UniquenessNotCertified("(u0) fails")

    def same(a, b) -> bool:
        return a == b if space.is_finite else abs(a - b) <= tol

    if not same(g(x), f(x)):
        raise NotCoincidencePoints(x)
    xbar = g(x)
    if not (same(g(xbar), f(xbar)) and same(xbar, g(xbar))):
        raise PromotionFailed(f"g(x) = {xbar} is not fixed by both maps")
    return xbar
