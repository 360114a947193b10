"""Ordered metric spaces: finite exact spaces and closed real intervals.

Finite spaces keep the order as a dense boolean matrix and the metric as
exact rationals, so every inequality downstream is checked without
tolerance. Intervals carry the natural order and ``|x - y|``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ElementOutsideSubset,
    MetricAsymmetric,
    MetricNegative,
    MetricNonzeroDiagonal,
    MetricZeroOffDiagonal,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
    ShapeError,
    TriangleViolated,
    UnknownElement,
)
from .verdicts import Check, Verdict

Rational = Fraction

_INT_SAFE = 2**61


def as_fraction(value: Any) -> Fraction:
    """Coerce ints, ``"p/q"`` strings, Fractions and floats to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -----------------------------------------------------------------------------
# finite spaces
# -----------------------------------------------------------------------------

class FiniteOrderedMetricSpace:
    """A validated finite ordered metric space on elements ``0..n-1``.

    Parameters
    ----------
    order : (n, n) array-like of bool
        ``order[i][j]`` means element ``i`` precedes-or-equals element ``j``.
        Must already be reflexive, antisymmetric and transitive.
    metric : (n, n) array-like of rationals
        Ints, Fractions or ``"p/q"`` strings.
    labels : sequence of str, optional
        Display names; default ``"0".."n-1"``.

    Raises
    ------
    ValidationError
        The specific subclass names the first violated axiom and carries the
        witness indices.
    """

    is_finite = True

    def __init__(self, order: Any, metric: Any, labels: Sequence[str] | None = None):
        order_arr = np.array(order, dtype=bool)
        if order_arr.ndim != 2 or order_arr.shape[0] != order_arr.shape[1] or order_arr.shape[0] < 1:
            raise ShapeError(detail=f"order must be a non-empty square matrix, got shape {order_arr.shape}")
        n = order_arr.shape[0]
        rows = [list(r) for r in metric]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ShapeError(detail=f"metric must be {n}x{n}")
        frac = tuple(tuple(as_fraction(v) for v in r) for r in rows)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ShapeError(detail=f"expected {n} labels, got {len(labels)}")

        _check_order(order_arr)
        ints, denom = _common_denominator(frac)
        _check_metric(ints)

        order_arr.setflags(write=False)
        self.n = n
        self.order = order_arr
        self.metric = frac
        self.labels = tuple(str(s) for s in labels)
        self._int_metric = ints
        self._denom = denom

    # -- basic queries ---------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteOrderedMetricSpace(n={self.n})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteOrderedMetricSpace):
            return NotImplemented
        return (
            self.n == other.n
            and bool(np.array_equal(self.order, other.order))
            and self.metric == other.metric
            and self.labels == other.labels
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def elements(self) -> range:
        return range(self.n)

    def check(self, x: Any) -> int:
        if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)) or not 0 <= x < self.n:
            raise UnknownElement(x)
        return int(x)

    def contains(self, x: Any) -> bool:
        try:
            self.check(x)
        except UnknownElement:
            return False
        return True

    def leq(self, x: int, y: int) -> bool:
        return bool(self.order[x, y])

    def comparable(self, x: int, y: int) -> bool:
        return bool(self.comp[x, y])

    def d(self, x: int, y: int) -> Fraction:
        return self.metric[x][y]

    @cached_property
    def comp(self) -> np.ndarray:
        c = self.order | self.order.T
        c.setflags(write=False)
        return c

    def int_metric(self) -> tuple[np.ndarray, int]:
        """Metric scaled to integers: ``metric == ints / denom``."""
        return self._int_metric, self._denom


def _check_order(o: np.ndarray) -> None:
    diag = np.diag(o)
    if not diag.all():
        raise NotReflexive(int(np.argmin(diag)))
    both = o & o.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        raise NotAntisymmetric(i, j)
    oi = o.astype(np.int64)
    bad = ((oi @ oi) > 0) & ~o
    if bad.any():
        i, k = map(int, np.argwhere(bad)[0])
        j = int(np.argmax(o[i] & o[:, k]))
        raise NotTransitive(i, j, k, detail=f"{i}<={j}<={k} but not {i}<={k}")


def _common_denominator(frac: tuple[tuple[Fraction, ...], ...]) -> tuple[np.ndarray, int]:
    denom = 1
    for row in frac:
        for q in row:
            denom = lcm(denom, q.denominator)
    scaled = [[q.numerator * (denom // q.denominator) for q in row] for row in frac]
    biggest = max(abs(v) for row in scaled for v in row)
    dtype = np.int64 if 3 * biggest < _INT_SAFE else object
    return np.array(scaled, dtype=dtype), denom


def _check_metric(m: np.ndarray) -> None:
    n = m.shape[0]
    neg = m < 0
    if neg.any():
        i, j = map(int, np.argwhere(neg)[0])
        raise MetricNegative(i, j)
    diag = np.array([m[i, i] for i in range(n)])
    if (diag != 0).any():
        raise MetricNonzeroDiagonal(int(np.argmax(diag != 0)))
    asym = m != m.T
    if asym.any():
        i, j = map(int, np.argwhere(asym)[0])
        raise MetricAsymmetric(i, j)
    zero = m == 0
    np.fill_diagonal(zero, False)
    if zero.any():
        i, j = map(int, np.argwhere(zero)[0])
        raise MetricZeroOffDiagonal(i, j)
    # d(i,k) <= d(i,j) + d(j,k), one i-slab at a time to bound memory
    for i in range(n):
        via = m[i][:, None] + m  # via[j, k] = d(i,j) + d(j,k)
        bad = m[i][None, :] > via
        if bad.any():
            j, k = map(int, np.argwhere(bad)[0])
            raise TriangleViolated(i, j, k, detail=f"d({i},{k}) > d({i},{j}) + d({j},{k})")


def validate_space(order: Any, metric: Any, labels: Sequence[str] | None = None) -> FiniteOrderedMetricSpace:
    """Build a :class:`FiniteOrderedMetricSpace`, raising on the first violated axiom."""
    return FiniteOrderedMetricSpace(order, metric, labels)


def closure_from_pairs(n: int, pairs: Iterable[Sequence[int]]) -> np.ndarray:
    """Reflexive-transitive closure of a relation given by ``(i, j)`` pairs."""
    o = np.eye(n, dtype=bool)
    for i, j in pairs:
        o[i, j] = True
    for k in range(n):
        o |= o[:, k:k + 1] & o[k:k + 1, :]
    return o


# -----------------------------------------------------------------------------
# continuous intervals
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuousIntervalSpace:
    """The closed interval ``[lo, hi]`` with the natural order and ``|x - y|``."""

    lo: Fraction
    hi: Fraction
    complete: bool = True

    is_finite = False

    def __post_init__(self) -> None:
        lo, hi = as_fraction(self.lo), as_fraction(self.hi)
        if not lo < hi:
            raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, x: Any) -> bool:
        try:
            return bool(self.lo <= x <= self.hi)
        except TypeError:
            return False

    def check(self, x: Any):
        if not self.contains(x):
            raise UnknownElement(x)
        return x

    def clip(self, x: float) -> float:
        return min(max(x, float(self.lo)), float(self.hi))

    def leq(self, x, y) -> bool:
        return x <= y

    def comparable(self, x, y) -> bool:
        return True

    def d(self, x, y):
        return abs(x - y)

    def grid(self, points: int = 1000) -> np.ndarray:
        return np.linspace(float(self.lo), float(self.hi), points)


Space = FiniteOrderedMetricSpace | ContinuousIntervalSpace


# -----------------------------------------------------------------------------
# comparability machinery
# -----------------------------------------------------------------------------

def comparable(space: Space, x, y) -> bool:
    space.check(x)
    space.check(y)
    return space.comparable(x, y)


def is_totally_ordered(space: Space, subset: Iterable | None = None) -> bool:
    if not space.is_finite:
        if subset is not None:
            for x in subset:
                space.check(x)
        return True
    idx = list(space.elements) if subset is None else [space.check(x) for x in subset]
    if not idx:
        return True
    return bool(space.comp[np.ix_(idx, idx)].all())


@dataclass(frozen=True)
class Chain:
    """A comparability chain ``nodes[0] <> nodes[1] <> ... <> nodes[-1]``.

    A degenerate chain ``(a, a)`` certifies the trivial case ``a == b``.
    """

    nodes: tuple
    within: frozenset | None = None
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.nodes)

    def is_valid(self, space: Space, a=None, b=None) -> bool:
        nodes = self.nodes
        if len(nodes) < 2:
            return False
        if a is not None and nodes[0] != a:
            return False
        if b is not None and nodes[-1] != b:
            return False
        if self.within is not None and any(v not in self.within for v in nodes):
            return False
        return all(space.contains(v) for v in nodes) and all(
            space.comparable(u, v) for u, v in zip(nodes, nodes[1:])
        )

    def reversed(self) -> "Chain":
        return Chain(tuple(reversed(self.nodes)), self.within, self.degenerate)


def find_chain(space: Space, a, b, within: Iterable | None = None) -> Chain | None:
    """Shortest comparability chain from ``a`` to ``b`` inside ``within``.

    Breadth-first search on the comparability graph induced on ``within``
    (all elements by default). Returns ``None`` when ``b`` is unreachable.
    For ``a == b`` the degenerate certificate ``(a, a)`` is returned.
    """
    space.check(a)
    space.check(b)
    if not space.is_finite:
        if within is not None:
            raise TypeError("subsets of interval spaces are not supported here")
        return Chain((a, a), None, True) if a == b else Chain((a, b))

    allowed = frozenset(space.elements) if within is None else frozenset(space.check(x) for x in within)
    for v in (a, b):
        if v not in allowed:
            raise ElementOutsideSubset(v)
    if a == b:
        return Chain((a, a), allowed, True)

    comp = space.comp
    mask = np.zeros(space.n, dtype=bool)
    mask[list(allowed)] = True
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(comp[u] & mask):
            v = int(v)
            if v in parent:
                continue
            parent[v] = u
            if v == b:
                path = [b]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return Chain(tuple(reversed(path)), allowed)
            queue.append(v)
    return None


def is_fg_directed(space: Space, pair) -> tuple[bool, dict]:
    """Whether every ``x, y`` admits ``z`` with ``f(x) <> g(z)`` and ``f(y) <> g(z)``.

    Returns ``(True, {(x, y): z})`` on success or ``(False, {(x, y): None})``
    naming the first pair without a witness. Pass identity maps for the
    g-directed and plain directed specializations.
    """
    if not space.is_finite:
        return True, {}
    f = np.asarray(pair.f, dtype=np.intp)
    g = np.asarray(pair.g, dtype=np.intp)
    comp = space.comp
    # hit[a, z]: f-value a is comparable with g(z)
    hit = comp[:, g]
    witnesses: dict = {}
    for x in space.elements:
        for y in range(x, space.n):
            common = hit[f[x]] & hit[f[y]]
            if common[x]:
                z = x
            elif common.any():
                z = int(np.argmax(common))
            else:
                return False, {(x, y): None}
            witnesses[(x, y)] = z
    return True, witnesses


def is_termwise_monotone(space: Space, sequence: Sequence) -> bool:
    seq = [space.check(x) for x in sequence]
    return all(space.comparable(u, v) for u, v in zip(seq, seq[1:]))


def is_termwise_bounded_by(space: Space, sequence: Sequence, z) -> bool:
    space.check(z)
    return all(space.comparable(space.check(x), z) for x in sequence)


_TCC_FINITE = (
    "finite metric: convergent sequences are eventually constant, so the "
    "constant tail is c-bounded by its own limit"
)


def has_tcc(space: Space, declared: Mapping[str, Any] | None = None) -> Check:
    if space.is_finite:
        return Check.holds(note=_TCC_FINITE)
    return _declared_or_total(declared, "tcc")


def has_g_tcc(space: Space, g=None, declared: Mapping[str, Any] | None = None) -> Check:
    if space.is_finite:
        return Check.holds(note=_TCC_FINITE)
    return _declared_or_total(declared, "g_tcc")


def _declared_or_total(declared, key) -> Check:
    declared = declared or {}
    if key in declared:
        if declared[key]:
            return Check(Verdict.ASSERTED, note=f"declared {key}")
        return Check.fails(note=f"declared {key} = false")
    return Check.holds(note="interval is totally ordered: every term is comparable to the limit")


# -----------------------------------------------------------------------------
# the classical uniqueness conditions on the whole order
# -----------------------------------------------------------------------------

def condition_total(space: Space) -> Check:
    """(I) the whole order is total."""
    if not space.is_finite:
        return Check.holds()
    bad = np.argwhere(~space.comp)
    return Check.holds() if not len(bad) else Check.fails(tuple(map(int, bad[0])))


def condition_lower_and_upper(space: Space) -> Check:
    """(II) every pair has a lower bound and an upper bound."""
    if not space.is_finite:
        return Check.holds()
    o = space.order
    for x in space.elements:
        for y in range(x, space.n):
            if not (o[:, x] & o[:, y]).any() or not (o[x] & o[y]).any():
                return Check.fails((x, y))
    return Check.holds()


def condition_lower_or_upper(space: Space) -> Check:
    """(III) every pair has a lower bound or an upper bound."""
    if not space.is_finite:
        return Check.holds()
    o = space.order
    for x in space.elements:
        for y in range(x, space.n):
            if not (o[:, x] & o[:, y]).any() and not (o[x] & o[y]).any():
                return Check.fails((x, y))
    return Check.holds()


def condition_directed(space: Space) -> Check:
    """Every pair has a common comparable element (equivalent to (III))."""
    if not space.is_finite:
        return Check.holds()
    c = space.comp
    for x in space.elements:
        for y in range(x, space.n):
            if not (c[x] & c[y]).any():
                return Check.fails((x, y))
    return Check.holds()


def condition_chain_connected(space: Space) -> Check:
    """(IV) a comparability chain joins every pair."""
    if not space.is_finite:
        return Check.holds()
    for y in range(1, space.n):
        if find_chain(space, 0, y) is None:
            return Check.fails((0, y))
    return Check.holds()
