"""Exception hierarchy shared by every module."""

from __future__ import annotations


class OrdfixError(Exception):
    """Base class for all errors raised by ordfix."""


# -- space validation ---------------------------------------------------------

class ValidationError(OrdfixError, ValueError):
    """An ordered metric space failed one of its axioms.

    ``witness`` holds the offending indices so callers can re-check them.
    """

    axiom = "axiom"

    def __init__(self, *witness: int, detail: str = ""):
        self.witness = tuple(witness)
        msg = f"{type(self).__name__}{self.witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ShapeError(ValidationError):
    axiom = "shape"


class NotReflexive(ValidationError):
    axiom = "reflexive"


class NotAntisymmetric(ValidationError):
    axiom = "antisymmetric"


class NotTransitive(ValidationError):
    axiom = "transitive"


class MetricNegative(ValidationError):
    axiom = "nonnegative"


class MetricNonzeroDiagonal(ValidationError):
    axiom = "zero diagonal"


class MetricAsymmetric(ValidationError):
    axiom = "symmetric"


class MetricZeroOffDiagonal(ValidationError):
    axiom = "identity of indiscernibles"


class TriangleViolated(ValidationError):
    axiom = "triangle inequality"


class UnknownElement(OrdfixError, KeyError):
    pass


class ElementOutsideSubset(OrdfixError, ValueError):
    pass


class NotFiniteSpace(OrdfixError, TypeError):
    """Operation is only decidable on finite spaces."""


# -- solver -------------------------------------------------------------------

class SolverError(OrdfixError):
    pass


class NoComparableStart(SolverError):
    pass


class PreimageNotFound(SolverError):
    pass


class MonotonicityBroken(SolverError):
    pass


class DecayBroken(SolverError):
    pass


class MaxIterExceeded(SolverError):
    pass


class AlphaOutOfRange(SolverError, ValueError):
    pass


class HypothesesFailed(SolverError):
    """Raised by the hypothesis gate; ``report`` carries the full verdict table."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(f"{e.id} ({e.name})" for e in report.failed())
        super().__init__(f"hypotheses failed: {failed}")


class NotWeaklyCompatible(SolverError):
    pass


class UniquenessNotCertified(SolverError):
    pass


class PromotionFailed(SolverError):
    pass


# -- uniqueness ---------------------------------------------------------------

class NotCoincidencePoints(OrdfixError, ValueError):
    pass


class NoChain(OrdfixError):
    pass


class LadderBroken(OrdfixError):
    def __init__(self, n: int, i: int, detail: str = ""):
        self.n, self.i = n, i
        super().__init__(f"comparability ladder broken at n={n}, link i={i} {detail}".rstrip())


class ConditionMissing(OrdfixError):
    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"condition {condition} not satisfied" + (f": {detail}" if detail else ""))


class InternalContradiction(OrdfixError):
    """Two results that must agree by a proven implication do not. Always a bug."""


class OracleContradiction(InternalContradiction):
    """A certificate disagreed with brute-force enumeration."""


# -- oracle / io --------------------------------------------------------------

class GenerationBudgetExceeded(OrdfixError):
    def __init__(self, constraint: str, attempts: int):
        self.constraint = constraint
        self.attempts = attempts
        super().__init__(f"no instance satisfying {constraint} after {attempts} attempts")


class ParseError(OrdfixError, ValueError):
    pass
