"""Uniqueness of points of coincidence, coincidence points and common fixed points.

The chain condition (u0) asks for a comparability chain inside ``g(X)``
between any two values of ``f``. ``chain_convergence_trace`` replays the
contraction-along-a-chain argument: every link of the chain is pushed
through the joint iteration and shrinks at least geometrically.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import (
    ConditionMissing,
    InternalContradiction,
    NoChain,
    NotCoincidencePoints,
    OracleContradiction,
    LadderBroken,
)
from .mappings import (
    Instance,
    MappingPair,
    commutation_suite,
    estimate_alpha,
    is_injective,
    range_inclusion,
)
from .space import Chain, Space, find_chain, is_fg_directed, is_totally_ordered
from .verdicts import Check


class Mode(str, Enum):
    POC = "POC"
    COINCIDENCE = "COINCIDENCE"
    COMMON_FIXED = "COMMON_FIXED"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        key = str(value).upper().replace("-", "_")
        return {"COINCIDENCE_POINT": cls.COINCIDENCE, "COMMON_FIXED_POINT": cls.COMMON_FIXED}.get(key) or cls(key)


CONCLUSIONS = {
    Mode.POC: "UNIQUE_POC",
    Mode.COINCIDENCE: "UNIQUE_COINCIDENCE_POINT",
    Mode.COMMON_FIXED: "UNIQUE_COMMON_FIXED_POINT",
}


# -----------------------------------------------------------------------------
# (u0) and its two sufficient conditions
# -----------------------------------------------------------------------------


def check_u0(space: Space, pair: MappingPair) -> Check:
    """For all ``x, y``: a comparability chain between ``f(x)`` and ``f(y)`` inside ``g(X)``.

    On success the witness maps each unordered pair of f-values to a
    shortest chain; on failure it is an element pair ``(x, y)``.
    """
    if not space.is_finite:
        return Check.holds(note="interval is totally ordered: {fx, fy} is always a chain")
    f, g = pair.f, pair.g
    gX = sorted(set(g))
    gset = frozenset(gX)
    first_of: dict[int, int] = {}
    for x in space.elements:
        first_of.setdefault(f[x], x)
    values = sorted(first_of)
    for v in values:
        if v not in gset:
            return Check.fails((first_of[v], first_of[v]), note=f"f({first_of[v]}) is not in g(X)")
    chains: dict[tuple[int, int], Chain] = {}
    for i, a in enumerate(values):
        for b in values[i:]:
            c = find_chain(space, a, b, within=gset)
            if c is None:
                return Check.fails((first_of[a], first_of[b]), note=f"no chain between {a} and {b} in g(X)")
            chains[(a, b)] = c
    return Check.holds(chains)


@dataclass(frozen=True)
class U0Reductions:
    total: Check      # (u0^1): f(X) totally ordered
    directed: Check   # (u0^2): (f, g)-directed
    u0: Check

    @property
    def applied(self) -> str | None:
        if self.total:
            return "u0^1"
        if self.directed:
            return "u0^2"
        return None


def check_u0_reductions(space: Space, pair: MappingPair) -> U0Reductions:
    """Evaluate (u0^1) and (u0^2) and confirm each implies (u0) when ``f(X) ⊆ g(X)``."""
    u0 = check_u0(space, pair)
    if not space.is_finite:
        h = Check.holds(note="interval is totally ordered")
        return U0Reductions(h, h, u0)
    f, g = pair.f, pair.g
    fX = sorted(set(f))
    if is_totally_ordered(space, fX):
        total = Check.holds({(a, b): Chain((a, b)) for i, a in enumerate(fX) for b in fX[i:]})
    else:
        bad = np.argwhere(~space.comp[np.ix_(fX, fX)])[0]
        total = Check.fails((fX[bad[0]], fX[bad[1]]))
    ok, zs = is_fg_directed(space, pair)
    if ok:
        directed = Check.holds({(x, y): Chain((f[x], g[z], f[y])) for (x, y), z in zs.items()})
    else:
        directed = Check.fails(next(iter(zs)))
    if (total or directed) and not u0 and range_inclusion(space, pair):
        raise InternalContradiction(f"reduction holds but (u0) fails: {u0.witness}")
    return U0Reductions(total, directed, u0)


# -----------------------------------------------------------------------------
# contraction along a chain
# -----------------------------------------------------------------------------


@dataclass
class ChainTrace:
    """Link lengths ``t[n][i] = d(g z_n^i, g z_n^{i+1})`` and their sums.

    ``majorants[n]`` bounds the distance between the two points of
    coincidence at every ``n``; ``decay_violations`` lists ``(n, i)`` with
    ``t[n][i] > alpha**n * t[0][i]`` and is empty whenever the hypotheses hold.
    """

    chain: Chain
    alpha: Any
    z: list[list] = field(default_factory=list)
    t: list[list] = field(default_factory=list)
    majorants: list = field(default_factory=list)
    decay_violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def distance(self):
        return self.majorants[0] if self.majorants else 0


def _preimage_fn(space: Space, g):
    if space.is_finite:
        rep: dict[int, int] = {}
        for x in space.elements:
            rep.setdefault(g[x], x)
        return rep.get
    return lambda y: g.inverse(y, space.lo, space.hi)


def chain_convergence_trace(
    instance: Instance,
    x,
    y,
    n_max: int = 50,
    alpha=None,
    chain: Chain | None = None,
) -> ChainTrace:
    """Push a chain between two points of coincidence through the joint iteration.

    Parameters
    ----------
    instance : Instance
    x, y : elements
        Coincidence points (``g(x) = f(x)``, ``g(y) = f(y)``).
    n_max : int
        Number of iteration steps to record.
    alpha : rational, optional
        Contraction constant; estimated exactly on finite spaces when omitted.
    chain : Chain, optional
        A chain of g-values from ``f(x)`` to ``f(y)`` inside ``g(X)``. When
        omitted a shortest one is searched for. Endpoints are replaced by the
        constant sequences ``x`` and ``y``.

    Raises
    ------
    NotCoincidencePoints, NoChain, LadderBroken
    """
    space, f, g = instance.space, instance.f, instance.g
    for p in (x, y):
        space.check(p)
        if g(p) != f(p):
            raise NotCoincidencePoints(p)
    a, b = f(x), f(y)
    within = frozenset(g) if space.is_finite else None
    if chain is None:
        chain = find_chain(space, a, b, within=within)
        if chain is None:
            raise NoChain(f"no chain between {a} and {b} in g(X)")
    elif not chain.is_valid(space, a, b) or (within is not None and any(v not in within for v in chain.nodes)):
        raise NoChain(f"supplied chain {chain.nodes} does not join {a} and {b} inside g(X)")

    if alpha is None:
        est = estimate_alpha(space, instance.pair)
        alpha = est.alpha if est.alpha is not None else Fraction(1)

    pre = _preimage_fn(space, g)
    k = len(chain.nodes)
    z = [x] + [pre(v) for v in chain.nodes[1:-1]] + [y]
    out = ChainTrace(chain, alpha)
    t0 = None
    for n in range(n_max + 1):
        gz = [g(v) for v in z]
        for i in range(k - 1):
            if not space.comparable(gz[i], gz[i + 1]):
                raise LadderBroken(n, i + 1, f"g-values {gz[i]} and {gz[i + 1]} are incomparable")
        t = [space.d(gz[i], gz[i + 1]) for i in range(k - 1)]
        if t0 is None:
            t0 = t
        else:
            scale = alpha ** n
            out.decay_violations += [(n, i + 1) for i in range(k - 1) if t[i] > scale * t0[i]]
        out.z.append(list(z))
        out.t.append(t)
        out.majorants.append(sum(t))
        nz = [z[0]]
        for v in z[1:-1]:
            nxt = pre(f(v))
            if nxt is None:
                raise NoChain(f"f({v}) has no g-preimage: f(X) is not inside g(X)")
            nz.append(nxt)
        nz.append(z[-1])
        z = nz
    return out


# -----------------------------------------------------------------------------
# certificates
# -----------------------------------------------------------------------------


@dataclass
class UniquenessCertificate:
    """Auditable uniqueness claim.

    ``chains`` are the (u0) witnesses keyed by pairs of f-values; they can be
    re-checked with :meth:`verify` without repeating the search.
    """

    conclusion: str
    mode: Mode
    condition_used: list[str]
    theorem: str
    point: Any
    chains: dict = field(default_factory=dict)
    oracle_checked: bool = False

    def verify(self, instance: Instance) -> bool:
        space, g = instance.space, instance.g
        within = frozenset(g) if space.is_finite else None
        for (a, b), c in self.chains.items():
            if not c.is_valid(space, a, b):
                return False
            if within is not None and any(v not in within for v in c.nodes):
                return False
        return True


def _report_ok(instance: Instance, theorem: str, grid: int) -> bool:
    from .theorems import check_hypotheses

    return check_hypotheses(instance, theorem, grid=grid).ok


def certify(instance: Instance, mode="POC", solve_result=None, config=None) -> UniquenessCertificate:
    """Issue a uniqueness certificate, or raise naming the missing condition.

    POC mode needs (u0); COINCIDENCE additionally needs one of ``f, g``
    injective (u1); COMMON_FIXED additionally needs weak compatibility (u2).
    Conditions are checked before existence, so a refusal names the first
    missing one. Existence comes from ``solve_result`` or a fresh solve
    along the route of whichever theorem applies. Finite instances are
    cross-checked against exhaustive enumeration first.

    Raises
    ------
    ConditionMissing
        A required condition fails; ``.condition`` names it.
    OracleContradiction
        The certificate would disagree with enumeration (a bug).
    """
    from .oracle import enumerate_instance
    from .solver import SolverConfig, promote_to_common_fixed_point, solve

    mode = Mode.parse(mode)
    config = config or SolverConfig()
    space, pair = instance.space, instance.pair

    red = check_u0_reductions(space, pair)
    if not red.u0:
        raise ConditionMissing("u0", red.u0.note)
    used = [red.applied or "u0"]

    if mode is Mode.COINCIDENCE:
        inj_f, inj_g = is_injective(space, pair.f), is_injective(space, pair.g)
        if not (inj_f or inj_g):
            raise ConditionMissing("u1", "neither f nor g is one-one")
        used.append("u1")
    if mode is Mode.COMMON_FIXED:
        wc = commutation_suite(space, pair, config.grid).weakly_compatible
        if not wc:
            raise ConditionMissing("u2", f"not weakly compatible at {wc.witness}")
        used.append("u2")

    candidates = {Mode.POC: ("T43", "T46"), Mode.COINCIDENCE: ("T44", "T46"), Mode.COMMON_FIXED: ("T45", "T46")}
    theorem = next((t for t in candidates[mode] if _report_ok(instance, t, config.grid)), None)
    if theorem is None:
        raise ConditionMissing("existence hypotheses", f"neither {' nor '.join(candidates[mode])} applies")

    if solve_result is None:
        # T46 extends the T33 list, the others extend T35
        path = "T33" if theorem == "T46" else "T35"
        solve_result = solve(instance, replace(config, theorem_path=path))
    if not solve_result.ok:
        raise ConditionMissing("existence", f"solver ended with {solve_result.trace.status.value}")

    x = solve_result.point
    if mode is Mode.POC:
        point = pair.g(x)
    elif mode is Mode.COINCIDENCE:
        point = x
    else:
        point = promote_to_common_fixed_point(instance, x, tol=config.tol)

    chains = red.u0.witness if isinstance(red.u0.witness, dict) else {}
    cert = UniquenessCertificate(CONCLUSIONS[mode], mode, used, theorem, point, chains)

    if space.is_finite:
        oracle = enumerate_instance(instance)
        found = {
            Mode.POC: oracle.points_of_coincidence,
            Mode.COINCIDENCE: oracle.coincidence_points,
            Mode.COMMON_FIXED: oracle.common_fixed_points,
        }[mode]
        if found != {point}:
            raise OracleContradiction(f"{cert.conclusion} at {point}, enumeration found {sorted(found)}")
        cert.oracle_checked = True
    if not cert.verify(instance):
        raise InternalContradiction("certificate chains do not re-validate")
    return cert
