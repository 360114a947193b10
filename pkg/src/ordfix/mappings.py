"""Mapping pairs ``(f, g)`` and every predicate the existence theorems quantify over.

On finite spaces each predicate is decided exactly by enumeration and a
failing verdict carries a counterexample that can be re-evaluated. On
interval spaces analytic facts come from the ``declared`` flags; sampling
may only downgrade them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import InternalContradiction, ParseError
from .space import (
    ContinuousIntervalSpace,
    FiniteOrderedMetricSpace,
    Space,
    as_fraction,
    format_fraction,
)
from .verdicts import Check, Verdict

DEFAULT_GRID = 1000

# -----------------------------------------------------------------------------
# maps
# -----------------------------------------------------------------------------


class IndexMap(tuple):
    """A self-map of ``0..n-1`` stored as its value table; callable like a function."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int]):
        return super().__new__(cls, (int(v) for v in values))

    __call__ = tuple.__getitem__

    def __repr__(self) -> str:
        return f"IndexMap({list(self)})"


def identity_map(n: int) -> IndexMap:
    return IndexMap(range(n))


@dataclass(frozen=True)
class RealMap:
    """Built-in real function: ``identity``, ``square`` or ``affine(p, q)`` = ``p*x + q``."""

    name: str
    p: Fraction = Fraction(1)
    q: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.name not in ("identity", "square", "affine"):
            raise ValueError(f"unknown built-in function {self.name!r}")
        object.__setattr__(self, "p", as_fraction(self.p))
        object.__setattr__(self, "q", as_fraction(self.q))

    @property
    def spec(self) -> str:
        if self.name == "affine":
            return f"affine({format_fraction(self.p)},{format_fraction(self.q)})"
        return self.name

    def __str__(self) -> str:
        return self.spec

    @property
    def is_identity(self) -> bool:
        return self.name == "identity" or (self.name == "affine" and self.p == 1 and self.q == 0)

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        """Polynomial coefficients ``(c0, c1, c2)``."""
        if self.name == "identity":
            return Fraction(0), Fraction(1), Fraction(0)
        if self.name == "square":
            return Fraction(0), Fraction(0), Fraction(1)
        return self.q, self.p, Fraction(0)

    def __call__(self, x):
        if self.name == "identity":
            return x
        if self.name == "square":
            return x * x
        if isinstance(x, Fraction) or isinstance(x, int):
            return self.p * x + self.q
        return float(self.p) * x + float(self.q)

    def image(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Exact image of ``[lo, hi]``."""
        a, b = self(lo), self(hi)
        if self.name == "square" and lo < 0 < hi:
            return Fraction(0), max(a, b)
        return min(a, b), max(a, b)

    def monotone_on(self, lo: Fraction, hi: Fraction) -> tuple[bool, bool]:
        """``(increasing, decreasing)`` on ``[lo, hi]``, decided analytically."""
        if self.name == "identity":
            return True, False
        if self.name == "affine":
            return self.p >= 0, self.p <= 0
        if hi <= 0:
            return False, True
        if lo >= 0:
            return True, False
        return False, False

    def injective_on(self, lo: Fraction, hi: Fraction) -> bool:
        if self.name == "square":
            return lo >= 0 or hi <= 0
        return self.name == "identity" or self.p != 0

    def inverse(self, y, lo: Fraction, hi: Fraction):
        """A preimage of ``y`` inside ``[lo, hi]`` (the analytic branch), or ``None``."""
        if self.name == "identity":
            x = y
        elif self.name == "affine":
            if self.p == 0:
                return lo if y == self.q else None
            x = (y - self.q) / self.p if isinstance(y, Fraction) else (y - float(self.q)) / float(self.p)
        else:
            if y < 0:
                return None
            r = _exact_sqrt(y) if isinstance(y, Fraction) else math.sqrt(y)
            x = r if lo <= r <= hi else -r
        return x if lo <= x <= hi else None

    def vectorized(self, xs: np.ndarray) -> np.ndarray:
        if self.name == "identity":
            return xs
        if self.name == "square":
            return xs * xs
        return float(self.p) * xs + float(self.q)


def _exact_sqrt(y: Fraction):
    rn, rd = math.isqrt(y.numerator), math.isqrt(y.denominator)
    if rn * rn == y.numerator and rd * rd == y.denominator:
        return Fraction(rn, rd)
    return math.sqrt(y)


_AFFINE = re.compile(r"^affine\(\s*([^,]+?)\s*,\s*([^)]+?)\s*\)$")


def parse_map(text: str) -> RealMap:
    """Parse ``"identity"``, ``"square"`` or ``"affine(p,q)"``."""
    text = text.strip()
    if text in ("identity", "square"):
        return RealMap(text)
    m = _AFFINE.match(text)
    if m:
        try:
            return RealMap("affine", Fraction(m.group(1)), Fraction(m.group(2)))
        except ValueError as exc:
            raise ParseError(f"bad affine coefficients in {text!r}") from exc
    raise ParseError(f"unknown built-in function {text!r}")


# -----------------------------------------------------------------------------
# pairs and instances
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class MappingPair:
    """The pair ``(f, g)`` plus analytic declarations used on interval spaces.

    Recognised ``declared`` keys: ``f_continuous``, ``g_continuous``,
    ``f_g_continuous``, ``compatible``, ``tcc``, ``g_tcc``, ``Y_complete``,
    ``alpha``.
    """

    f: Any
    g: Any
    declared: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("f", "g"):
            m = getattr(self, name)
            if not isinstance(m, (RealMap, IndexMap)):
                object.__setattr__(self, name, IndexMap(m))
        object.__setattr__(self, "declared", dict(self.declared))

    def validate(self, space: Space) -> None:
        """Check both maps send every element into ``space``."""
        for name in ("f", "g"):
            m = getattr(self, name)
            if space.is_finite:
                if not isinstance(m, IndexMap):
                    raise TypeError(f"{name} must be an index map on a finite space")
                if len(m) != space.n:
                    raise ValueError(f"{name} has {len(m)} entries, space has {space.n}")
                bad = [x for x, v in enumerate(m) if not 0 <= v < space.n]
                if bad:
                    raise ValueError(f"{name}({bad[0]}) = {m[bad[0]]} is outside the space")
            else:
                if not isinstance(m, RealMap):
                    raise TypeError(f"{name} must be a built-in function on an interval space")
                a, b = m.image(space.lo, space.hi)
                if a < space.lo or b > space.hi:
                    raise ValueError(f"{name} maps [{space.lo}, {space.hi}] onto [{a}, {b}], not into itself")

    def swap_g(self, g) -> "MappingPair":
        return MappingPair(self.f, g, self.declared)


@dataclass(frozen=True, eq=False)
class Instance:
    """A space, a mapping pair and optional extras: the subspace ``Y`` and a start ``x0``.

    On interval spaces ``Y`` is a ``(lo, hi)`` pair of rationals.
    """

    space: Space
    pair: MappingPair
    Y: Any = None
    x0: Any = None
    name: str = ""

    def __post_init__(self) -> None:
        self.pair.validate(self.space)
        if self.Y is not None:
            if self.space.is_finite:
                Y = frozenset(self.space.check(y) for y in self.Y)
            else:
                lo, hi = (as_fraction(v) for v in self.Y)
                if not self.space.lo <= lo <= hi <= self.space.hi:
                    raise ValueError("Y must be a sub-interval of the space")
                Y = (lo, hi)
            object.__setattr__(self, "Y", Y)
        if self.x0 is not None:
            self.space.check(self.x0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.space, self.pair, self.Y, self.x0) == (other.space, other.pair, other.Y, other.x0)

    @property
    def f(self):
        return self.pair.f

    @property
    def g(self):
        return self.pair.g

    @property
    def declared(self) -> Mapping[str, Any]:
        return self.pair.declared


# -----------------------------------------------------------------------------
# small helpers
# -----------------------------------------------------------------------------


def _is_identity(space: Space, m) -> bool:
    if isinstance(m, RealMap):
        return m.is_identity
    return tuple(m) == tuple(range(space.n))


def image(space: Space, m):
    """``m(X)``: a frozenset on finite spaces, an exact ``(lo, hi)`` interval otherwise."""
    if space.is_finite:
        return frozenset(m)
    return m.image(space.lo, space.hi)


def coincidence_points(space: FiniteOrderedMetricSpace, pair: MappingPair) -> list[int]:
    f, g = pair.f, pair.g
    return [x for x in space.elements if f[x] == g[x]]


def _first_pair(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if not len(hits) else tuple(int(v) for v in hits[0])


def _sample(space: ContinuousIntervalSpace, points: int) -> np.ndarray:
    return space.grid(points)


# -----------------------------------------------------------------------------
# comparability and monotonicity
# -----------------------------------------------------------------------------


def is_comparable_map(space: Space, f) -> Check:
    """``x <> y`` implies ``f(x) <> f(y)``. Counterexample: the pair ``(x, y)``."""
    if not space.is_finite:
        return Check.holds(note="interval is totally ordered")
    f = np.asarray(f, dtype=np.intp)
    c = space.comp
    bad = c & ~c[np.ix_(f, f)]
    w = _first_pair(bad)
    return Check.holds() if w is None else Check.fails(w)


def is_g_comparable(space: Space, pair: MappingPair) -> Check:
    """``g(x) <> g(y)`` implies ``f(x) <> f(y)``. Counterexample: the pair ``(x, y)``."""
    if not space.is_finite:
        return Check.holds(note="interval is totally ordered")
    f = np.asarray(pair.f, dtype=np.intp)
    g = np.asarray(pair.g, dtype=np.intp)
    c = space.comp
    bad = c[np.ix_(g, g)] & ~c[np.ix_(f, f)]
    w = _first_pair(bad)
    return Check.holds() if w is None else Check.fails(w)


@dataclass(frozen=True)
class MonotoneVerdict:
    increasing: Check
    decreasing: Check

    @property
    def kind(self) -> str:
        inc, dec = bool(self.increasing), bool(self.decreasing)
        if inc and dec:
            return "both"
        return "increasing" if inc else "decreasing" if dec else "neither"

    @property
    def monotone(self) -> Check:
        if self.increasing:
            return self.increasing
        if self.decreasing:
            return self.decreasing
        return Check.fails(
            {"increasing": self.increasing.witness, "decreasing": self.decreasing.witness},
            note="neither increasing nor decreasing",
        )

    def __bool__(self) -> bool:
        return bool(self.monotone)


def is_g_monotone(space: Space, pair: MappingPair, grid: int = DEFAULT_GRID) -> MonotoneVerdict:
    """g-increasing: ``g(x) <= g(y)`` implies ``f(x) <= f(y)``; g-decreasing reverses the conclusion.

    Counterexamples are pairs ``(x, y)`` with ``g(x) <= g(y)`` where the
    conclusion fails.
    """
    if space.is_finite:
        f = np.asarray(pair.f, dtype=np.intp)
        g = np.asarray(pair.g, dtype=np.intp)
        o = space.order
        premise = o[np.ix_(g, g)]
        fo = o[np.ix_(f, f)]
        inc = _first_pair(premise & ~fo)
        dec = _first_pair(premise & ~fo.T)
        return MonotoneVerdict(
            Check.holds() if inc is None else Check.fails(inc),
            Check.holds() if dec is None else Check.fails(dec),
        )
    return _interval_monotone(space, pair, grid)


def is_monotone(space: Space, f, grid: int = DEFAULT_GRID) -> MonotoneVerdict:
    g = RealMap("identity") if isinstance(f, RealMap) else identity_map(space.n)
    return is_g_monotone(space, MappingPair(f, g), grid)


def _interval_monotone(space: ContinuousIntervalSpace, pair: MappingPair, grid: int) -> MonotoneVerdict:
    f, g = pair.f, pair.g
    lo, hi = space.lo, space.hi
    xs = [lo + (hi - lo) * Fraction(k, grid - 1) for k in range(grid)]
    # sort by g-value; a violation of g-increasing shows up between some ordered pair
    gx = [g(x) for x in xs]
    fx = [f(x) for x in xs]
    order = sorted(range(grid), key=gx.__getitem__)
    inc_w = dec_w = None
    run_max = run_min = None  # indices of max / min f seen so far in g-order
    for k in order:
        if run_max is not None and inc_w is None and fx[run_max] > fx[k]:
            inc_w = (xs[run_max], xs[k])
        if run_min is not None and dec_w is None and fx[run_min] < fx[k]:
            dec_w = (xs[run_min], xs[k])
        if run_max is None or fx[k] > fx[run_max]:
            run_max = k
        if run_min is None or fx[k] < fx[run_min]:
            run_min = k
    analytic = g.is_identity

    def verdict(w, analytic_ok: bool) -> Check:
        if w is not None:
            return Check.fails(w, note="sampled counterexample")
        if analytic:
            return Check.of(analytic_ok, note="analytic, built-in function")
        return Check(Verdict.ASSERTED, note=f"no counterexample on {grid}-point grid")

    inc_ok, dec_ok = f.monotone_on(lo, hi) if analytic else (True, True)
    return MonotoneVerdict(verdict(inc_w, inc_ok), verdict(dec_w, dec_ok))


# -----------------------------------------------------------------------------
# ranges, injectivity, surjectivity
# -----------------------------------------------------------------------------


def range_inclusion(space: Space, pair: MappingPair, Y=None) -> Check:
    """``f(X) ⊆ g(X)``, or the sandwich ``f(X) ⊆ Y ⊆ g(X)`` when ``Y`` is given.

    Finite counterexamples are dicts naming the offending element, e.g.
    ``{"x": 3, "fx": 5}`` when ``f(3) = 5`` lies outside ``g(X)``.
    """
    f, g = pair.f, pair.g
    if space.is_finite:
        gX = frozenset(g)
        if Y is None:
            for x in space.elements:
                if f[x] not in gX:
                    return Check.fails({"x": x, "fx": f[x]}, note="f(x) not in g(X)")
            return Check.holds()
        Y = frozenset(Y)
        for x in space.elements:
            if f[x] not in Y:
                return Check.fails({"x": x, "fx": f[x]}, note="f(x) not in Y")
        for y in sorted(Y):
            if y not in gX:
                return Check.fails({"y": y}, note="y in Y but not in g(X)")
        return Check.holds()

    fa, fb = f.image(space.lo, space.hi)
    ga, gb = g.image(space.lo, space.hi)
    if Y is None:
        ok = ga <= fa and fb <= gb
        return Check.of(ok, None if ok else {"f(X)": (fa, fb), "g(X)": (ga, gb)}, note="interval image arithmetic")
    ya, yb = Y
    ok = ya <= fa and fb <= yb and ga <= ya and yb <= gb
    return Check.of(ok, None if ok else {"f(X)": (fa, fb), "Y": (ya, yb), "g(X)": (ga, gb)},
                    note="interval image arithmetic")


def is_injective(space: Space, m) -> Check:
    if not space.is_finite:
        return Check.of(m.injective_on(space.lo, space.hi), note="analytic, built-in function")
    seen: dict[int, int] = {}
    for x, v in enumerate(m):
        if v in seen:
            return Check.fails((seen[v], x))
        seen[v] = x
    return Check.holds()


def is_onto(space: Space, m) -> Check:
    if not space.is_finite:
        return Check.of(m.image(space.lo, space.hi) == (space.lo, space.hi), note="interval image arithmetic")
    missing = sorted(set(space.elements) - set(m))
    return Check.holds() if not missing else Check.fails(missing[0])


# -----------------------------------------------------------------------------
# commutation
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutationVerdicts:
    commuting: Check
    weakly_commuting: Check
    compatible: Check
    weakly_compatible: Check

    def as_dict(self) -> dict[str, Check]:
        return {
            "commuting": self.commuting,
            "weakly_commuting": self.weakly_commuting,
            "compatible": self.compatible,
            "weakly_compatible": self.weakly_compatible,
        }


_COMPAT_FINITE = (
    "finite space: lim g(x_n) = lim f(x_n) forces a tail of coincidence points, "
    "so compatible <=> weakly compatible"
)


def commutation_suite(space: Space, pair: MappingPair, grid: int = DEFAULT_GRID) -> CommutationVerdicts:
    """Commuting, weakly commuting, compatible and weakly compatible verdicts.

    Counterexamples are the offending point ``x``.
    """
    if space.is_finite:
        out = _finite_commutation(space, pair)
    else:
        out = _interval_commutation(space, pair, grid)
    ladder = [out.commuting, out.weakly_commuting, out.compatible, out.weakly_compatible]
    for left, right in zip(ladder, ladder[1:]):
        if left and not right:
            raise InternalContradiction(f"commutation ladder violated: {out}")
    return out


def _finite_commutation(space: FiniteOrderedMetricSpace, pair: MappingPair) -> CommutationVerdicts:
    f, g = pair.f, pair.g
    d = space.d
    commuting = next((x for x in space.elements if g[f[x]] != f[g[x]]), None)
    weak = next((x for x in space.elements if d(g[f[x]], f[g[x]]) > d(g[x], f[x])), None)
    coin = coincidence_points(space, pair)
    if not coin:
        wc = Check(Verdict.VACUOUS, note="no coincidence points")
    else:
        bad = next((x for x in coin if g[f[x]] != f[g[x]]), None)
        wc = Check.holds(coin) if bad is None else Check.fails(bad)
    return CommutationVerdicts(
        Check.holds() if commuting is None else Check.fails(commuting),
        Check.holds() if weak is None else Check.fails(weak),
        Check(wc.verdict, wc.witness, _COMPAT_FINITE),
        wc,
    )


def _poly_compose(outer: RealMap, inner: RealMap, x: Fraction) -> Fraction:
    return outer(inner(x))


def _interval_commutation(space: ContinuousIntervalSpace, pair: MappingPair, grid: int) -> CommutationVerdicts:
    f, g = pair.f, pair.g
    lo, hi = space.lo, space.hi
    # g∘f and f∘g are polynomials of degree <= 4: five exact evaluations decide equality
    probes = [lo + (hi - lo) * Fraction(k, 4) for k in range(5)]
    bad = next((x for x in probes if _poly_compose(g, f, x) != _poly_compose(f, g, x)), None)
    commuting = Check.holds(note="exact polynomial identity") if bad is None else Check.fails(bad)

    xs = _sample(space, grid)
    gf, fg = g.vectorized(f.vectorized(xs)), f.vectorized(g.vectorized(xs))
    gx, fx = g.vectorized(xs), f.vectorized(xs)
    if commuting:
        weakly = Check.holds(note="implied by commuting")
    else:
        viol = np.abs(gf - fg) > np.abs(gx - fx) + 1e-12
        weakly = (Check.fails(float(xs[np.argmax(viol)]), note="sampled counterexample") if viol.any()
                  else Check(Verdict.ASSERTED, note=f"no counterexample on {grid}-point grid"))

    coin = _interval_coincidences(space, pair)
    if commuting:
        weak_compat = Check.holds(note="implied by commuting")
    elif not coin:
        weak_compat = Check(Verdict.VACUOUS, note="no coincidence points")
    else:
        off = [x for x in coin if abs(g(f(x)) - f(g(x))) > 1e-9]
        weak_compat = Check.holds(coin) if not off else Check.fails(off[0])

    if weakly and weakly.verdict is Verdict.HOLDS:
        compatible = Check.holds(note="implied by weak commutativity")
    elif "compatible" in pair.declared:
        compatible = (Check(Verdict.ASSERTED, note="declared compatible") if pair.declared["compatible"]
                      else Check.fails(note="declared not compatible"))
        if compatible and not weak_compat:
            compatible = Check.fails(weak_compat.witness, note="declared compatible, but not weakly compatible")
    else:
        compatible = Check.fails(note="not declared; undecidable on an interval")
    return CommutationVerdicts(commuting, weakly, compatible, weak_compat)


def _interval_coincidences(space: ContinuousIntervalSpace, pair: MappingPair) -> list:
    """Roots of ``f - g`` (degree <= 2) inside the interval."""
    f0, f1, f2 = pair.f.coeffs()
    g0, g1, g2 = pair.g.coeffs()
    c0, c1, c2 = f0 - g0, f1 - g1, f2 - g2
    lo, hi = space.lo, space.hi
    if c2 == 0:
        if c1 == 0:
            return [lo] if c0 == 0 else []  # identical maps: report one representative
        r = -c0 / c1
        return [r] if lo <= r <= hi else []
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    s = _exact_sqrt(disc)
    roots = {(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)}
    return sorted(r for r in roots if lo <= r <= hi)


# -----------------------------------------------------------------------------
# continuity
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuityVerdicts:
    f_continuous: Check
    g_continuous: Check
    f_g_continuous: Check


def continuity_suite(space: Space, pair: MappingPair) -> ContinuityVerdicts:
    """Continuity of ``f``, of ``g``, and g-continuity of ``f``.

    Finite spaces are discrete, so the first two hold; g-continuity is
    decided as constancy of ``f`` on every g-fiber (counterexample: a pair
    ``(a, b)`` with ``g(a) = g(b)`` and ``f(a) != f(b)``).
    """
    if space.is_finite:
        f, g = pair.f, pair.g
        first: dict[int, int] = {}
        witness = None
        for x in space.elements:
            a = first.setdefault(g[x], x)
            if f[a] != f[x]:
                witness = (a, x)
                break
        discrete = "finite metric spaces are discrete"
        fg = (Check.holds(note="f is constant on every g-fiber") if witness is None
              else Check.fails(witness, note="g-fiber on which f is not constant"))
        return ContinuityVerdicts(Check.holds(note=discrete), Check.holds(note=discrete), fg)

    dec = pair.declared
    f_c = _declared_continuity(space, pair.f, dec, "f_continuous")
    g_c = _declared_continuity(space, pair.g, dec, "g_continuous")
    if pair.g.is_identity and "f_g_continuous" not in dec:
        fg = Check(f_c.verdict, f_c.witness, "g is the identity: reduces to continuity of f")
    else:
        fg = _declared_flag(dec, "f_g_continuous")
    return ContinuityVerdicts(f_c, g_c, fg)


def _declared_flag(declared: Mapping[str, Any], key: str) -> Check:
    if key not in declared:
        return Check.fails(note=f"{key} not declared; undecidable on an interval")
    if declared[key]:
        return Check(Verdict.ASSERTED, note=f"declared {key}")
    return Check.fails(note=f"declared {key} = false")


def _declared_continuity(space: ContinuousIntervalSpace, m: RealMap, declared, key) -> Check:
    c = _declared_flag(declared, key)
    if c.verdict is Verdict.ASSERTED and not looks_continuous(m.vectorized, space.lo, space.hi):
        return Check.fails(note=f"declared {key}, but dense sampling shows a jump")
    return c


def looks_continuous(fn, lo, hi, points: int = 4001) -> bool:
    """Spot check: the largest jump between neighbours must shrink when the grid is refined."""
    coarse = np.linspace(float(lo), float(hi), points)
    fine = np.linspace(float(lo), float(hi), 2 * points - 1)
    jc = np.max(np.abs(np.diff(fn(coarse))))
    jf = np.max(np.abs(np.diff(fn(fine))))
    return bool(jc < 1e-9 or jf <= 0.75 * jc)


# -----------------------------------------------------------------------------
# contraction constant
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaEstimate:
    """Smallest ``alpha`` with ``d(fx, fy) <= alpha * d(gx, gy)`` over comparable g-pairs.

    ``exact`` is true on finite spaces; on intervals the value is a sampled
    lower estimate of the supremum. ``witness`` is the maximizing pair, or on
    a fiber violation the pair ``(x, y)`` with ``g(x) = g(y)``, ``f(x) != f(y)``.
    """

    alpha: Any
    holds: bool
    exact: bool
    witness: Any = None
    note: str = ""

    def check(self) -> Check:
        return Check.of(self.holds, self.witness, self.note or f"alpha = {self.alpha}")


def estimate_alpha(space: Space, pair: MappingPair, grid: int = DEFAULT_GRID) -> AlphaEstimate:
    if space.is_finite:
        return _finite_alpha(space, pair)
    return _interval_alpha(space, pair, grid)


def _finite_alpha(space: FiniteOrderedMetricSpace, pair: MappingPair) -> AlphaEstimate:
    f, g = pair.f, pair.g
    comp = space.comp
    d = space.d
    alpha = Fraction(0)
    best = None
    for x in space.elements:
        for y in range(x + 1, space.n):
            gx, gy = g[x], g[y]
            if gx == gy:
                if f[x] != f[y]:
                    return AlphaEstimate(
                        None, False, True, (x, y),
                        note=f"g({x}) = g({y}) but f({x}) != f({y}): no finite contraction constant",
                    )
                continue
            if not comp[gx, gy]:
                continue
            r = d(f[x], f[y]) / d(gx, gy)
            if r > alpha:
                alpha, best = r, (x, y)
    if best is None:
        return AlphaEstimate(alpha, True, True, None, note="no comparable pair with distinct g-values: vacuous")
    return AlphaEstimate(alpha, alpha < 1, True, best, note=f"alpha = {format_fraction(alpha)}")


def _interval_alpha(space: ContinuousIntervalSpace, pair: MappingPair, grid: int) -> AlphaEstimate:
    xs = _sample(space, grid)
    F, G = pair.f.vectorized(xs), pair.g.vectorized(xs)
    dF = np.abs(F[:, None] - F[None, :])
    dG = np.abs(G[:, None] - G[None, :])
    fiber = (dG == 0) & (dF > 0)
    if fiber.any():
        i, j = _first_pair(fiber)
        return AlphaEstimate(None, False, False, (float(xs[i]), float(xs[j])),
                             note="g-fiber on which f is not constant")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dG > 0, dF / np.where(dG > 0, dG, 1.0), 0.0)
    k = int(np.argmax(ratio))
    i, j = divmod(k, grid)
    alpha = float(ratio[i, j])
    return AlphaEstimate(alpha, alpha < 1, False, (float(xs[i]), float(xs[j])),
                         note=f"ESTIMATE on {grid}-point grid: alpha ~ {alpha:.6f}")
