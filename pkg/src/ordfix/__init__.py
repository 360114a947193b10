"""Coincidence points and common fixed points of comparable contractions on ordered metric spaces."""

from .errors import (
    OrdfixError,
    ValidationError,
    ShapeError,
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    MetricNegative,
    MetricNonzeroDiagonal,
    MetricAsymmetric,
    MetricZeroOffDiagonal,
    TriangleViolated,
    UnknownElement,
    ElementOutsideSubset,
    NotFiniteSpace,
    SolverError,
    NoComparableStart,
    PreimageNotFound,
    MonotonicityBroken,
    DecayBroken,
    MaxIterExceeded,
    AlphaOutOfRange,
    HypothesesFailed,
    NotWeaklyCompatible,
    UniquenessNotCertified,
    PromotionFailed,
    NotCoincidencePoints,
    NoChain,
    LadderBroken,
    ConditionMissing,
    InternalContradiction,
    OracleContradiction,
    GenerationBudgetExceeded,
    ParseError,
)
from .mappings import (
    AlphaEstimate,
    IndexMap,
    Instance,
    MappingPair,
    RealMap,
    commutation_suite,
    continuity_suite,
    estimate_alpha,
    identity_map,
    is_comparable_map,
    is_g_comparable,
    is_g_monotone,
    is_injective,
    is_monotone,
    is_onto,
    parse_map,
    range_inclusion,
)
from .oracle import GeneratorParams, OracleResult, enumerate_instance, falsify, generate, necessity
from .solver import (
    IterationTrace,
    SolveResult,
    SolverConfig,
    Status,
    a_priori_bound,
    joint_iterate,
    promote_to_common_fixed_point,
    solve,
)
from .space import (
    Chain,
    ContinuousIntervalSpace,
    FiniteOrderedMetricSpace,
    closure_from_pairs,
    comparable,
    find_chain,
    has_g_tcc,
    has_tcc,
    is_fg_directed,
    is_termwise_bounded_by,
    is_termwise_monotone,
    is_totally_ordered,
    validate_space,
)
from .theorems import HypothesisReport, check_hypotheses
from .uniqueness import (
    ChainTrace,
    Mode,
    UniquenessCertificate,
    certify,
    chain_convergence_trace,
    check_u0,
    check_u0_reductions,
)
from .verdicts import Check, Verdict

__version__ = "0.1.0"
