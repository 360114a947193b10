"""Hypothesis lists of every supported theorem and the report that evaluates them.

Each theorem id maps to an ordered list of ``(hypothesis id, description,
evaluator)``; evaluators read from a lazily-populated :class:`Facts` cache so
a report never decides the same predicate twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable

from .mappings import (
    DEFAULT_GRID,
    Instance,
    _is_identity,
    commutation_suite,
    continuity_suite,
    estimate_alpha,
    image,
    is_comparable_map,
    is_g_comparable,
    is_g_monotone,
    is_injective,
    is_onto,
    range_inclusion,
)
from .space import (
    condition_lower_and_upper,
    condition_lower_or_upper,
    has_g_tcc,
    has_tcc,
)
from .verdicts import Check, Verdict, all_of, any_of


@dataclass(frozen=True)
class HypothesisEntry:
    id: str
    name: str
    verdict: Verdict
    witness: Any = None
    note: str = ""
    required: bool = True


@dataclass
class HypothesisReport:
    theorem: str
    entries: list[HypothesisEntry] = field(default_factory=list)

    def failed(self) -> list[HypothesisEntry]:
        return [e for e in self.entries if e.required and e.verdict is Verdict.FAILS]

    @property
    def ok(self) -> bool:
        return not self.failed()

    def __getitem__(self, key: str) -> HypothesisEntry:
        for e in self.entries:
            if e.id == key or e.id.split(".", 1)[-1] == key:
                return e
        raise KeyError(key)

    def __iter__(self):
        return iter(self.entries)


class Facts:
    """Memoised predicate evaluations for one instance."""

    def __init__(self, instance: Instance, grid: int = DEFAULT_GRID):
        self.instance = instance
        self.space = instance.space
        self.pair = instance.pair
        self.grid = grid

    @cached_property
    def Y(self):
        """The complete subspace; defaults to ``g(X)`` when the instance names none."""
        return self.instance.Y if self.instance.Y is not None else image(self.space, self.pair.g)

    @cached_property
    def complete(self) -> Check:
        if self.space.is_finite:
            return Check.holds(note="finite metric spaces are complete")
        return Check.of(self.space.complete, note="closed interval")

    @cached_property
    def Y_complete(self) -> Check:
        dec = self.pair.declared
        if "Y_complete" in dec and not dec["Y_complete"]:
            return Check.fails(note="declared Y_complete = false")
        if self.space.is_finite:
            return Check.holds(note="finite subspaces are complete")
        return Check.holds(note="closed sub-interval of a complete space")

    @cached_property
    def g_identity(self) -> Check:
        return Check.of(_is_identity(self.space, self.pair.g), note="g must be the identity")

    @cached_property
    def range(self) -> Check:
        return range_inclusion(self.space, self.pair)

    @cached_property
    def sandwich(self) -> Check:
        return range_inclusion(self.space, self.pair, self.Y)

    @cached_property
    def g_comparable(self) -> Check:
        return is_g_comparable(self.space, self.pair)

    @cached_property
    def f_comparable(self) -> Check:
        return is_comparable_map(self.space, self.pair.f)

    @cached_property
    def g_monotone(self) -> Check:
        return is_g_monotone(self.space, self.pair, self.grid).monotone

    @cached_property
    def commutation(self):
        return commutation_suite(self.space, self.pair, self.grid)

    @cached_property
    def continuity(self):
        return continuity_suite(self.space, self.pair)

    @cached_property
    def tcc(self) -> Check:
        return has_tcc(self.space, self.pair.declared)

    @cached_property
    def g_tcc(self) -> Check:
        return has_g_tcc(self.space, self.pair.g, self.pair.declared)

    @cached_property
    def alpha(self):
        return estimate_alpha(self.space, self.pair, self.grid)

    @cached_property
    def contraction(self) -> Check:
        return self.alpha.check()

    @cached_property
    def start(self) -> Check:
        from .solver import find_start

        x0 = self.instance.x0
        f, g = self.pair.f, self.pair.g
        if x0 is not None:
            return Check.of(self.space.comparable(g(x0), f(x0)), x0, note="given x0")
        found = find_start(self.space, self.pair, self.grid)
        return Check.holds(found) if found is not None else Check.fails(note="no x with g(x) <> f(x)")

    @cached_property
    def u0(self) -> Check:
        from .uniqueness import check_u0

        return check_u0(self.space, self.pair)

    @cached_property
    def u1(self) -> Check:
        return any_of(is_injective(self.space, self.pair.f), is_injective(self.space, self.pair.g),
                      note="f or g is one-one")

    # disjunctions used by several theorems
    @cached_property
    def existence_continuity(self) -> Check:
        c = self.continuity
        return any_of(c.f_g_continuous, all_of(c.f_continuous, c.g_continuous), self.tcc_on_Y)

    @cached_property
    def tcc_on_Y(self) -> Check:
        # subspaces of a finite space are finite; sub-intervals stay totally ordered
        return self.tcc


Evaluator = Callable[[Facts], Check]
Hyp = tuple[str, str, Evaluator]


def _h(key: str, name: str, fn: Evaluator) -> Hyp:
    return key, name, fn


COMPLETE = _h("X", "(X, d) is complete", lambda F: F.complete)
START = "some x0 has g(x0) <> f(x0)"
CONTRACT = "d(fx, fy) <= alpha d(gx, gy) whenever g(x) <> g(y), for some alpha in [0, 1)"

T33: list[Hyp] = [
    COMPLETE,
    _h("i", "f(X) ⊆ g(X)", lambda F: F.range),
    _h("ii", "f is g-comparable", lambda F: F.g_comparable),
    _h("iii", "(f, g) is compatible", lambda F: F.commutation.compatible),
    _h("iv", "g is continuous", lambda F: F.continuity.g_continuous),
    _h("v", "f is continuous or X has g-TCC", lambda F: any_of(F.continuity.f_continuous, F.g_tcc)),
    _h("vi", START, lambda F: F.start),
    _h("vii", CONTRACT, lambda F: F.contraction),
]

T35: list[Hyp] = [
    _h("i", "f(X) ⊆ Y ⊆ g(X)", lambda F: F.sandwich),
    _h("ii", "f is g-comparable", lambda F: F.g_comparable),
    _h("iii", "(Y, d) is complete", lambda F: F.Y_complete),
    _h("iv", "f is g-continuous, or f and g are continuous, or Y has TCC", lambda F: F.existence_continuity),
    _h("v", START, lambda F: F.start),
    _h("vi", CONTRACT, lambda F: F.contraction),
]

# sufficient conditions for (iii); reported, never gating
C36: list[Hyp] = [
    _h("onto", "X is complete and f or g is onto",
       lambda F: all_of(F.complete, any_of(is_onto(F.space, F.pair.f), is_onto(F.space, F.pair.g)))),
    _h("closed", "X is complete and Y is closed",
       lambda F: all_of(F.complete, Check.holds(note="finite sets and closed sub-intervals are closed"))),
]

U0 = _h("u0", "C(fx, fy, <>, gX) is nonempty for all x, y", lambda F: F.u0)
U1 = _h("u1", "f or g is one-one", lambda F: F.u1)
U2 = _h("u2", "(f, g) is weakly compatible", lambda F: F.commutation.weakly_compatible)


def _existence_e(F: Facts) -> Check:
    c = F.continuity
    e = all_of(F.complete, F.commutation.compatible, c.g_continuous, any_of(c.f_continuous, F.g_tcc))
    e_prime = all_of(F.sandwich, F.Y_complete, F.existence_continuity)
    return any_of(e, e_prime)


def _t37(second: Hyp) -> list[Hyp]:
    return [
        _h("a", "f(X) ⊆ g(X)", lambda F: F.range),
        second,
        _h("c", START, lambda F: F.start),
        _h("d", CONTRACT, lambda F: F.contraction),
        _h("e", "(e): X complete, compatible, g continuous, f continuous or g-TCC; or (e'): "
                "complete Y with f(X) ⊆ Y ⊆ g(X) and a continuity/TCC alternative", _existence_e),
    ]


G_IDENTITY = _h("g=I", "g is the identity", lambda F: F.g_identity)
FIXED_START = "some x0 has x0 <> f(x0)"
FIXED_CONTRACT = "d(fx, fy) <= alpha d(x, y) for comparable x, y, some alpha in [0, 1)"

C51: list[Hyp] = [
    G_IDENTITY,
    _h("a", "(X, d) is complete", lambda F: F.complete),
    _h("b", "f is comparable", lambda F: F.f_comparable),
    _h("c", "f is continuous or X has TCC", lambda F: any_of(F.continuity.f_continuous, F.tcc)),
    _h("d", FIXED_START, lambda F: F.start),
    _h("e", FIXED_CONTRACT, lambda F: F.contraction),
]

# single-map lists that ask for monotonicity instead of comparability
RR: list[Hyp] = [
    G_IDENTITY,
    _h("a", "(X, d) is complete", lambda F: F.complete),
    _h("b", "f is monotone", lambda F: F.g_monotone),
    _h("c", "f is continuous", lambda F: F.continuity.f_continuous),
    _h("d", FIXED_START, lambda F: F.start),
    _h("e", FIXED_CONTRACT, lambda F: F.contraction),
    _h("f", "every pair has a lower bound and an upper bound", lambda F: condition_lower_and_upper(F.space)),
]

NRL: list[Hyp] = [
    G_IDENTITY,
    _h("a", "(X, d) is complete", lambda F: F.complete),
    _h("b", "f is monotone", lambda F: F.g_monotone),
    _h("c", "f is continuous or X has TCC", lambda F: any_of(F.continuity.f_continuous, F.tcc)),
    _h("d", FIXED_START, lambda F: F.start),
    _h("e", FIXED_CONTRACT, lambda F: F.contraction),
    _h("f", "every pair has a lower bound or an upper bound", lambda F: condition_lower_or_upper(F.space)),
]

THEOREMS: dict[str, tuple[list[Hyp], list[Hyp]]] = {
    # id: (required hypotheses, informational extras)
    "T33": (T33, []),
    "T35": (T35, C36),
    "T37": (_t37(_h("b", "f is g-comparable", lambda F: F.g_comparable)), []),
    "T27": (_t37(_h("b", "f is g-monotone", lambda F: F.g_monotone)), []),
    "T43": (T35 + [U0], []),
    "T44": (T35 + [U0, U1], []),
    "T45": (T35 + [U0, U2], []),
    "T46": (T33 + [U0], []),
    "C51": (C51, []),
    "C51U": (C51 + [_h("f", "C(fx, fy, <>) is nonempty for all x, y", lambda F: F.u0)], []),
    "RR": (RR, []),
    "NRL": (NRL, []),
}

ALIASES = {"RR-PRESET": "RR", "NRL-PRESET": "NRL"}


def theorem_ids() -> list[str]:
    return list(THEOREMS)


def check_hypotheses(instance: Instance, theorem: str = "T33", grid: int = DEFAULT_GRID,
                     facts: Facts | None = None) -> HypothesisReport:
    """Evaluate every hypothesis of ``theorem`` on ``instance``."""
    key = ALIASES.get(theorem.upper(), theorem.upper())
    try:
        required, extras = THEOREMS[key]
    except KeyError:
        raise KeyError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}") from None
    F = facts or Facts(instance, grid)
    report = HypothesisReport(key)
    for tag, group, is_required in ((key, required, True), ("C36", extras, False)):
        for hid, name, fn in group:
            c = fn(F)
            report.entries.append(HypothesisEntry(f"{tag}.{hid}", name, c.verdict, c.witness, c.note, is_required))
    return report
