"""Verdict values returned by every hypothesis checker."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any


class Verdict(str, Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    ASSERTED = "ASSERTED"   # declared by the user, not decided
    VACUOUS = "VACUOUS"     # holds because the quantifier ranges over nothing

    @property
    def ok(self) -> bool:
        return self is not Verdict.FAILS


@dataclass(frozen=True)
class Check:
    """Outcome of one decidable (or declared) predicate.

    ``witness`` is a certificate on success or a counterexample on failure;
    ``note`` explains how the verdict was reached when that is not obvious.
    """

    verdict: Verdict
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.verdict.ok

    @classmethod
    def holds(cls, witness: Any = None, note: str = "") -> "Check":
        return cls(Verdict.HOLDS, witness, note)

    @classmethod
    def fails(cls, witness: Any = None, note: str = "") -> "Check":
        return cls(Verdict.FAILS, witness, note)

    @classmethod
    def of(cls, value: bool, witness: Any = None, note: str = "") -> "Check":
        return cls(Verdict.HOLDS if value else Verdict.FAILS, witness, note)


def any_of(*checks: Check, note: str = "") -> Check:
    """Disjunction: the first non-failing check wins, otherwise the first failure."""
    for c in checks:
        if c:
            return Check(c.verdict, c.witness, note or c.note)
    return Check.fails([c.witness for c in checks], note or "; ".join(c.note for c in checks if c.note))


def all_of(*checks: Check, note: str = "") -> Check:
    for c in checks:
        if not c:
            return Check(Verdict.FAILS, c.witness, note or c.note)
    if all(c.verdict is Verdict.VACUOUS for c in checks):
        return Check(Verdict.VACUOUS, None, note)
    if any(c.verdict is Verdict.ASSERTED for c in checks):
        return Check(Verdict.ASSERTED, None, note)
    return Check.holds(None, note)
