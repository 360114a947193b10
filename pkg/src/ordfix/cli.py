"""Command-line surface: ``ordfix {validate,check,solve,certify,oracle,fuzz,demo}``.

Every command returns a :class:`~ordfix.io.Report`; ``main`` prints it as
text or, with ``--json``, as the machine-readable document, and exits with
the report's code (0 ok, 2 hypotheses failed, 3 invalid input, 4 internal
contradiction).
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable, Sequence

from . import presets
from .errors import (
    ConditionMissing,
    ElementOutsideSubset,
    HypothesesFailed,
    InternalContradiction,
    MaxIterExceeded,
    NotFiniteSpace,
    OrdfixError,
    ParseError,
    SolverError,
    UnknownElement,
    ValidationError,
    NoChain,
)
from .io import (
    EXIT_HYPOTHESES,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_VALIDATION,
    Report,
    instance_to_dict,
    load_instance,
)
from .mappings import Instance, estimate_alpha, is_comparable_map, is_monotone
from .oracle import GeneratorParams, enumerate_instance, falsify
from .solver import SolveResult, SolverConfig, a_priori_bound, solve
from .space import as_fraction, is_totally_ordered
from .theorems import HypothesisReport, check_hypotheses
from .uniqueness import UniquenessCertificate, certify

CHECKED_THEOREMS = ("T33", "T35", "T43", "T45")


# -----------------------------------------------------------------------------
# result -> dict helpers
# -----------------------------------------------------------------------------


def _label(instance: Instance, x) -> Any:
    if x is None:
        return None
    if instance.space.is_finite:
        return instance.space.labels[x]
    return float(x)


def report_table(report: HypothesisReport) -> dict[str, dict]:
    return {
        e.id: {"verdict": e.verdict.value, "name": e.name, "witness": e.witness, "note": e.note,
               "required": e.required}
        for e in report
    }


def trace_summary(res: SolveResult) -> dict[str, Any]:
    tr, inst = res.trace, res.instance
    alpha = tr.alpha_used
    steps = []
    d0 = tr.distances[0] if tr.distances else 0
    for n, x, gnext, d in tr.steps:
        row = {"n": n, "x": _label(inst, x), "g_next": _label(inst, gnext), "d": d}
        if alpha is not None and alpha < 1:
            row["tail_bound"] = a_priori_bound(d0, alpha, n)
        steps.append(row)
    return {
        "status": tr.status.value,
        "x0": _label(inst, tr.x0),
        "n_steps": tr.n_steps,
        "final_distance": tr.distances[-1] if tr.distances else 0,
        "alpha": alpha,
        "alpha_estimate": res.alpha.alpha,
        "alpha_exact": res.alpha.exact,
        "point": _label(inst, tr.point),
        "value": _label(inst, tr.value),
        "reason": tr.reason,
        "steps": steps,
    }


def certificate_dict(instance: Instance, cert: UniquenessCertificate) -> dict[str, Any]:
    return {
        "conclusion": cert.conclusion,
        "mode": cert.mode.value,
        "condition_used": cert.condition_used,
        "theorem": cert.theorem,
        "point": _label(instance, cert.point),
        "chains": cert.chains,
        "oracle_checked": cert.oracle_checked,
    }


def oracle_dict(instance: Instance) -> dict[str, Any]:
    o = enumerate_instance(instance)
    lab = lambda s: sorted(_label(instance, x) for x in s)  # noqa: E731
    return {
        "coincidence_points": lab(o.coincidence_points),
        "points_of_coincidence": lab(o.points_of_coincidence),
        "common_fixed_points": lab(o.common_fixed_points),
    }


# -----------------------------------------------------------------------------
# error handling
# -----------------------------------------------------------------------------


_HYPOTHESIS_ERRORS = (HypothesesFailed, ConditionMissing, SolverError, NoChain)


def _error_report(command: str, exc: BaseException, data: dict | None = None) -> Report:
    err: dict[str, Any] = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ValidationError):
        err["witness"] = list(exc.witness)
        err["source"] = getattr(exc, "source", None)
        code = EXIT_VALIDATION
    elif isinstance(exc, (ParseError, UnknownElement, ElementOutsideSubset, NotFiniteSpace)):
        code = EXIT_VALIDATION
    elif isinstance(exc, (InternalContradiction, MaxIterExceeded)):
        code = EXIT_INTERNAL
    elif isinstance(exc, HypothesesFailed):
        err["failed"] = [f"{e.id} ({e.name})" for e in exc.report.failed()]
        err["witness"] = [e.witness for e in exc.report.failed()]
        code = EXIT_HYPOTHESES
    elif isinstance(exc, ConditionMissing):
        err["condition"] = exc.condition
        code = EXIT_HYPOTHESES
    elif isinstance(exc, _HYPOTHESIS_ERRORS):
        code = EXIT_HYPOTHESES
    else:
        code = EXIT_INTERNAL
    return Report(command, code, data or {}, err)


def _guarded(command: str, fn: Callable[[dict], Report]) -> Report:
    data: dict[str, Any] = {}
    try:
        return fn(data)
    except (OrdfixError, ValueError, KeyError) as exc:
        return _error_report(command, exc, data)


# -----------------------------------------------------------------------------
# commands
# -----------------------------------------------------------------------------


def cmd_validate(path: str, from_hasse: bool = False) -> Report:
    def run(data: dict) -> Report:
        data["file"] = str(path)
        inst = load_instance(path, from_hasse)
        space = inst.space
        data["kind"] = "finite" if space.is_finite else "interval"
        if space.is_finite:
            data["n"] = space.n
            data["elements"] = list(space.labels)
            axioms = ("reflexive", "antisymmetric", "transitive", "metric_nonnegative", "metric_zero_diagonal",
                      "metric_symmetric", "metric_separates_points", "triangle_inequality")
            data["axioms"] = {a: {"verdict": "HOLDS"} for a in axioms}
        else:
            data["interval"] = [space.lo, space.hi]
        data["totally_ordered"] = is_totally_ordered(space)
        data["valid"] = True
        return Report("validate", EXIT_OK, data)

    return _guarded("validate", run)


def cmd_check(path: str, from_hasse: bool = False) -> Report:
    def run(data: dict) -> Report:
        inst = load_instance(path, from_hasse)
        data["file"] = str(path)
        reports = {t: check_hypotheses(inst, t) for t in CHECKED_THEOREMS}
        data["theorems"] = {t: {"ok": r.ok, "hypotheses": report_table(r)} for t, r in reports.items()}
        return Report("check", EXIT_OK, data)

    return _guarded("check", run)


def _solve_data(data: dict, inst: Instance, config: SolverConfig) -> tuple[SolveResult, int]:
    res = solve(inst, config)
    data["theorem"] = res.theorem
    data["hypotheses"] = report_table(res.report)
    data["trace"] = trace_summary(res)
    code = EXIT_OK if res.ok else EXIT_HYPOTHESES
    if inst.space.is_finite:
        oracle = oracle_dict(inst)
        member = res.ok and res.point in enumerate_instance(inst).coincidence_points
        oracle["solver_point_is_member"] = member
        data["oracle"] = oracle
        if res.ok and not member:
            raise InternalContradiction(f"solver point {res.point} is not a coincidence point")
    return res, code


def cmd_solve(path: str, theorem: str = "t33", x0: str | None = None, max_iter: int = 10_000,
              tol: float = 1e-12, verify: bool = True, from_hasse: bool = False) -> Report:
    def run(data: dict) -> Report:
        inst = load_instance(path, from_hasse)
        data["file"] = str(path)
        config = SolverConfig(max_iter=max_iter, tol=tol, verify_hypotheses_first=verify,
                              theorem_path=theorem.upper(), x0=_parse_x0(inst, x0))
        _, code = _solve_data(data, inst, config)
        return Report("solve", code, data)

    return _guarded("solve", run)


def cmd_certify(path: str, mode: str = "poc", from_hasse: bool = False) -> Report:
    def run(data: dict) -> Report:
        inst = load_instance(path, from_hasse)
        data["file"] = str(path)
        cert = certify(inst, mode)
        data["certificate"] = certificate_dict(inst, cert)
        return Report("certify", EXIT_OK, data)

    return _guarded("certify", run)


def cmd_oracle(path: str, from_hasse: bool = False) -> Report:
    def run(data: dict) -> Report:
        inst = load_instance(path, from_hasse)
        data["file"] = str(path)
        data.update(oracle_dict(inst))
        return Report("oracle", EXIT_OK, data)

    return _guarded("oracle", run)


def cmd_fuzz(theorem: str = "t33", trials: int = 1000, seed: int = 0, n: int = 8,
             density: str = "1/2") -> Report:
    def run(data: dict) -> Report:
        params = GeneratorParams(n=n, edge_density=as_fraction(density), seed=seed)
        out = falsify(theorem, trials, params)
        data.update(theorem=out.theorem, trials=out.trials, checked=out.checked, filtered=out.filtered,
                    counterexample_found=out.found)
        if out.found:
            data["counterexample"] = {"seed": out.counterexample_seed, "reason": out.reason,
                                      "instance": instance_to_dict(out.counterexample)}
            return Report("fuzz", EXIT_INTERNAL, data,
                          {"type": "Counterexample", "message": out.reason, "witness": out.counterexample_seed})
        return Report("fuzz", EXIT_OK, data)

    return _guarded("fuzz", run)


def cmd_demo(name: str, x0: str | None = None) -> Report:
    name = name.lower()

    def run(data: dict) -> Report:
        data["demo"] = name
        if name == "ex52":
            return _demo_interval(data, x0)
        if name == "ex52-grid":
            return _demo_grid(data, x0)
        if name in presets.PRESET_HYPOTHESES:
            return _demo_preset(data, name)
        raise ParseError(f"unknown demo {name!r}; choose from {', '.join(presets.DEMOS)}")

    return _guarded("demo", run)


def _demo_interval(data: dict, x0: str | None) -> Report:
    start = as_fraction(x0) if x0 is not None else presets.THIRD
    inst = presets.square_interval(start)
    res, code = _solve_data(data, inst, SolverConfig(hypotheses="C51"))
    mono = is_monotone(inst.space, inst.f)
    data["verdicts"] = {
        "interval_comparable": is_comparable_map(inst.space, inst.f),
        "interval_monotone": mono.monotone,
        "sampled_alpha": estimate_alpha(inst.space, inst.pair).alpha,
        "fixed_point_abs": abs(res.point) if res.ok else None,
    }
    data["grid"] = presets.grid_contrast()
    return Report("demo", code, data)


def _demo_grid(data: dict, x0: str | None) -> Report:
    inst = presets.square_grid()
    config = SolverConfig(hypotheses="C51", x0=_parse_x0(inst, x0))
    res, code = _solve_data(data, inst, config)
    data["grid"] = presets.grid_contrast()
    cert = certify(inst, "COMMON_FIXED", solve_result=res)
    data["certificate"] = certificate_dict(inst, cert)
    return Report("demo", code, data)


def _demo_preset(data: dict, name: str) -> Report:
    inst = presets.square_grid()
    theorem = presets.PRESET_HYPOTHESES[name]
    data["preset_hypotheses"] = theorem
    data["comparability_variant_ok"] = check_hypotheses(inst, "C51").ok
    data["hypotheses"] = report_table(check_hypotheses(inst, theorem))
    solve(inst, SolverConfig(hypotheses=theorem))
    return Report("demo", EXIT_OK, data)


def _parse_x0(inst: Instance, text: str | None):
    if text is None:
        return None
    if inst.space.is_finite:
        labels = list(inst.space.labels)
        if text in labels:
            return labels.index(text)
        try:
            return inst.space.check(int(text))
        except ValueError:
            raise ParseError(f"x0 {text!r} is neither a label nor an index") from None
    return as_fraction(text)


# -----------------------------------------------------------------------------
# argument parsing
# -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable report")

    def with_file(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("path", help="instance JSON file, or a name in $ORDFIX_INSTANCE_DIR")
        sp.add_argument("--from-hasse", action="store_true", help="treat 'order' as cover pairs and close it")

    p = argparse.ArgumentParser(prog="ordfix", description="Coincidence and common fixed points of "
                                "comparable contractions on ordered metric spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    with_file(sub.add_parser("validate", parents=[common], help="check order and metric axioms"))
    with_file(sub.add_parser("check", parents=[common], help="hypothesis tables for T33/T35/T43/T45"))

    s = sub.add_parser("solve", parents=[common], help="run the joint iteration")
    with_file(s)
    s.add_argument("--theorem", choices=("t33", "t35"), default="t33")
    s.add_argument("--x0")
    s.add_argument("--max-iter", type=int, default=10_000)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--no-verify", action="store_true", help="skip the hypothesis gate")

    c = sub.add_parser("certify", parents=[common], help="uniqueness certificate")
    with_file(c)
    c.add_argument("--mode", choices=("poc", "coincidence", "common-fixed"), default="poc")

    with_file(sub.add_parser("oracle", parents=[common], help="exhaustive enumeration"))

    fz = sub.add_parser("fuzz", parents=[common], help="search for counterexamples")
    fz.add_argument("--theorem", choices=("t33", "t35", "t43", "t45"), default="t33")
    fz.add_argument("--trials", type=int, default=1000)
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--n", type=int, default=8, help="largest instance size")
    fz.add_argument("--density", default="1/2", help="edge density of the random order, a rational")

    d = sub.add_parser("demo", parents=[common], help="built-in examples")
    d.add_argument("name", choices=presets.DEMOS)
    d.add_argument("--x0")
    return p


def _glue_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-1/3" as an option; bind it to its flag explicitly
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--x0":
            val = next(it, None)
            out.append(tok if val is None else f"--x0={val}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> Report:
    a = build_parser().parse_args(None if argv is None else _glue_values(argv))
    if a.command == "validate":
        return cmd_validate(a.path, a.from_hasse)
    if a.command == "check":
        return cmd_check(a.path, a.from_hasse)
    if a.command == "solve":
        return cmd_solve(a.path, a.theorem, a.x0, a.max_iter, a.tol, not a.no_verify, a.from_hasse)
    if a.command == "certify":
        return cmd_certify(a.path, a.mode, a.from_hasse)
    if a.command == "oracle":
        return cmd_oracle(a.path, a.from_hasse)
    if a.command == "fuzz":
        return cmd_fuzz(a.theorem, a.trials, a.seed, a.n, a.density)
    return cmd_demo(a.name, a.x0)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = run(argv)
    print(report.to_json() if "--json" in argv else report.render())
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
