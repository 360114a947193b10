"""Brute-force ground truth, seeded instance generation and counterexample search."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import GenerationBudgetExceeded, NotFiniteSpace
from .mappings import Instance, MappingPair
from .space import FiniteOrderedMetricSpace, as_fraction, closure_from_pairs

RANGE_INCLUSION = "RANGE_INCLUSION"
G_COMPARABLE = "G_COMPARABLE"
CONTRACTION = "CONTRACTION"
COMPATIBLE = "COMPATIBLE"
COMPARABLE_START = "COMPARABLE_START"
U0 = "U0"
FORCE_IDS = frozenset({RANGE_INCLUSION, G_COMPARABLE, CONTRACTION, COMPATIBLE, COMPARABLE_START, U0})

T33_FORCE = frozenset({RANGE_INCLUSION, G_COMPARABLE, CONTRACTION, COMPATIBLE, COMPARABLE_START})
T35_FORCE = T33_FORCE - {COMPATIBLE}
T43_FORCE = T35_FORCE | {U0}
T45_FORCE = T43_FORCE | {COMPATIBLE}
THEOREM_FORCE = {"T33": T33_FORCE, "T35": T35_FORCE, "T43": T43_FORCE, "T45": T45_FORCE}

# report ids of the hypothesis each forced constraint is responsible for
_HYPOTHESIS_OF = {
    "T33": {RANGE_INCLUSION: "T33.i", G_COMPARABLE: "T33.ii", COMPATIBLE: "T33.iii",
            COMPARABLE_START: "T33.vi", CONTRACTION: "T33.vii"},
    "T35": {RANGE_INCLUSION: "T35.i", G_COMPARABLE: "T35.ii", COMPARABLE_START: "T35.v", CONTRACTION: "T35.vi"},
}


# -----------------------------------------------------------------------------
# enumeration
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    coincidence_points: frozenset
    points_of_coincidence: frozenset
    common_fixed_points: frozenset


def enumerate_instance(instance: Instance) -> OracleResult:
    """Exhaustive scan for coincidence points, points of coincidence and common fixed points."""
    space = instance.space
    if not space.is_finite:
        raise NotFiniteSpace("enumeration needs a finite space")
    f, g = instance.f, instance.g
    cp = frozenset(x for x in space.elements if g[x] == f[x])
    return OracleResult(
        cp,
        frozenset(g[x] for x in cp),
        frozenset(x for x in cp if g[x] == x),
    )


# -----------------------------------------------------------------------------
# generation
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorParams:
    """Seeded recipe for a random finite instance.

    ``force`` lists constraints constructed by design or by rejection; see
    the module constants (``T33_FORCE`` bundles everything the T33
    existence list needs).
    """

    n: int = 6
    edge_density: Fraction = Fraction(1, 2)
    embed_dim: int = 2
    seed: int = 0
    force: frozenset = frozenset()
    identity_g: bool = False
    budget: int = 10_000

    def __post_init__(self) -> None:
        density = as_fraction(self.edge_density)
        object.__setattr__(self, "edge_density", density)
        object.__setattr__(self, "force", frozenset(self.force))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= density <= 1:
            raise ValueError("edge_density must lie in [0, 1]")
        if self.embed_dim < 1:
            raise ValueError("embed_dim must be >= 1")
        unknown = self.force - FORCE_IDS
        if unknown:
            raise ValueError(f"unknown force ids {sorted(unknown)}")


def random_order(rng: random.Random, n: int, density: Fraction) -> np.ndarray:
    """Closure of a random DAG whose edges follow a random topological order."""
    perm = rng.sample(range(n), n)
    p = float(density)
    edges = [(perm[a], perm[b]) for a in range(n) for b in range(a + 1, n) if density == 1 or rng.random() < p]
    return closure_from_pairs(n, edges)


def random_metric(rng: random.Random, n: int, dim: int) -> list[list[Fraction]]:
    """L1 distances between ``n`` distinct random rational points."""
    den = rng.choice((1, 2, 3, 4))
    span = 4 * n + 1
    pts: list[tuple[int, ...]] = []
    seen = set()
    while len(pts) < n:
        p = tuple(rng.randrange(span) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return [[Fraction(sum(abs(a - b) for a, b in zip(p, q)), den) for q in pts] for p in pts]


_INNER_DRAWS = 40


def generate(params: GeneratorParams) -> Instance:
    """Deterministic (in ``params.seed``) random instance honouring ``params.force``.

    Raises
    ------
    GenerationBudgetExceeded
        Rejection sampling ran out of attempts; names the constraint that
        failed most often.
    """
    rng = random.Random(params.seed)
    n, force = params.n, params.force
    attempts = 0
    fails: Counter[str] = Counter()
    while attempts < params.budget:
        space = FiniteOrderedMetricSpace(random_order(rng, n, params.edge_density),
                                         random_metric(rng, n, params.embed_dim))
        g = list(range(n)) if params.identity_g else [rng.randrange(n) for _ in range(n)]
        ints, _ = space.int_metric()
        for _ in range(_INNER_DRAWS):
            attempts += 1
            f = _draw_f(rng, space, ints, g, force)
            failed = CONTRACTION if f is None else _first_unmet(space, f, g, force)
            if failed is None:
                Y = None
                if RANGE_INCLUSION in force:
                    fX, gX = set(f), set(g)
                    Y = sorted(fX | {u for u in sorted(gX - fX) if rng.random() < 0.5})
                return Instance(space, MappingPair(f, g), Y=Y, x0=_pick_start(rng, space, f, g),
                                name=f"seed={params.seed}")
            fails[failed] += 1
            if attempts >= params.budget:
                break
    raise GenerationBudgetExceeded(fails.most_common(1)[0][0] if fails else "?", attempts)


def _draw_f(rng: random.Random, space, ints, g, force) -> list[int] | None:
    n = space.n
    structured = CONTRACTION in force or G_COMPARABLE in force
    if not structured:
        if RANGE_INCLUSION in force:
            return [g[rng.randrange(n)] for _ in range(n)]
        return [rng.randrange(n) for _ in range(n)]

    # f = T o g with T built greedily on g(X); every comparable pair of
    # g-values must keep comparable images and strictly shrink
    comp = space.comp
    U = sorted(set(g))
    codomain = U if RANGE_INCLUSION in force else list(range(n))
    T: dict[int, int] = {}
    for u in rng.sample(U, len(U)):
        linked = [v for v in T if comp[u, v]]
        cands = []
        for c in codomain:
            ok = True
            for v in linked:
                tv = T[v]
                if G_COMPARABLE in force and not comp[c, tv]:
                    ok = False
                    break
                if CONTRACTION in force and not ints[c, tv] < ints[u, v]:
                    ok = False
                    break
            if ok:
                cands.append(c)
        if not cands:
            return None
        # favour values not yet in the image so f does not collapse to a constant
        fresh = [c for c in cands if c not in T.values()]
        T[u] = rng.choice(fresh if fresh and rng.random() < 0.75 else cands)
    return [T[g[x]] for x in range(n)]


def _pick_start(rng: random.Random, space, f, g) -> int | None:
    # a comparable start that is not already a coincidence point, when one exists
    comp = space.comp
    ok = [x for x in range(space.n) if comp[g[x], f[x]]]
    moving = [x for x in ok if g[x] != f[x]]
    if moving:
        return rng.choice(moving)
    return rng.choice(ok) if ok else None


def _first_unmet(space, f, g, force) -> str | None:
    comp = space.comp
    n = space.n
    if RANGE_INCLUSION in force and not set(f) <= set(g):
        return RANGE_INCLUSION
    if COMPARABLE_START in force and not any(comp[g[x], f[x]] for x in range(n)):
        return COMPARABLE_START
    if COMPATIBLE in force:
        for x in range(n):
            if g[x] == f[x] and g[f[x]] != f[g[x]]:
                return COMPATIBLE
    if U0 in force and not _u0_fast(space, f, g):
        return U0
    return None


def _u0_fast(space, f, g) -> bool:
    U = set(g)
    fX = set(f)
    if not fX <= U:
        return False
    comp = space.comp
    start = next(iter(fX))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in U:
            if v not in seen and comp[u, v]:
                seen.add(v)
                stack.append(v)
    return fX <= seen


# -----------------------------------------------------------------------------
# falsification
# -----------------------------------------------------------------------------


@dataclass
class FalsifyResult:
    theorem: str
    trials: int
    checked: int = 0
    filtered: int = 0
    counterexample: Instance | None = None
    counterexample_seed: int | None = None
    reason: str = ""
    seeds: list[int] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.counterexample is not None


def trial_params(params: GeneratorParams, t: int, force: Iterable[str]) -> GeneratorParams:
    """Parameters of trial ``t``: sizes cycle through ``1..params.n``."""
    return replace(params, n=1 + t % params.n, seed=params.seed + t, force=frozenset(force))


def _conclusion_fails(theorem: str, instance: Instance) -> str:
    from .solver import SolverConfig, solve

    oracle = enumerate_instance(instance)
    if theorem in ("T33", "T35"):
        if not oracle.coincidence_points:
            return "no coincidence point"
        res = solve(instance, SolverConfig(theorem_path=theorem, verify_hypotheses_first=False))
        if not res.ok or res.point not in oracle.coincidence_points:
            return f"solver returned {res.trace.status.value} at {res.point}"
        return ""
    if theorem == "T43":
        k = len(oracle.points_of_coincidence)
        return "" if k == 1 else f"{k} points of coincidence"
    if theorem == "T45":
        k = len(oracle.common_fixed_points)
        return "" if k == 1 else f"{k} common fixed points"
    raise ValueError(f"unsupported theorem {theorem!r}")


def falsify(theorem: str, trials: int, params: GeneratorParams = GeneratorParams(n=8)) -> FalsifyResult:
    """Hunt for an instance satisfying every hypothesis of ``theorem`` whose conclusion fails.

    Each trial generates a hypothesis-forcing instance, re-verifies the
    hypotheses independently, then checks the conclusion by enumeration.
    The expected result has ``found == False``.
    """
    from .theorems import check_hypotheses

    theorem = theorem.upper()
    force = THEOREM_FORCE[theorem] | params.force
    out = FalsifyResult(theorem, trials)
    for t in range(trials):
        p = trial_params(params, t, force)
        inst = generate(p)
        if not check_hypotheses(inst, theorem).ok:
            out.filtered += 1
            continue
        out.checked += 1
        why = _conclusion_fails(theorem, inst)
        if why:
            out.counterexample, out.counterexample_seed, out.reason = inst, p.seed, why
            break
    return out


def necessity(theorem: str, dropped: str, trials: int,
              params: GeneratorParams = GeneratorParams(n=6)) -> list[tuple[int, Instance]]:
    """Instances where only ``dropped`` fails and the conclusion fails too.

    Shows the dropped hypothesis is doing work: a non-empty result is expected.
    """
    from .theorems import check_hypotheses

    theorem = theorem.upper()
    target = _HYPOTHESIS_OF[theorem][dropped]
    force = THEOREM_FORCE[theorem] - {dropped}
    found = []
    for t in range(trials):
        p = trial_params(params, t, force)
        try:
            inst = generate(p)
        except GenerationBudgetExceeded:
            continue
        failed = {e.id for e in check_hypotheses(inst, theorem).failed()}
        if failed == {target} and not enumerate_instance(inst).coincidence_points:
            found.append((p.seed, inst))
    return found
