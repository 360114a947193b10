"""JSON instance files, JSON-safe conversion and the report object shared by the CLI."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import ParseError, ValidationError
from .mappings import IndexMap, Instance, MappingPair, RealMap, parse_map
from .space import (
    Chain,
    ContinuousIntervalSpace,
    FiniteOrderedMetricSpace,
    as_fraction,
    closure_from_pairs,
    format_fraction,
)
from .verdicts import Check

INSTANCE_DIR_ENV = "ORDFIX_INSTANCE_DIR"

EXIT_OK = 0
EXIT_HYPOTHESES = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


# -----------------------------------------------------------------------------
# locating files
# -----------------------------------------------------------------------------


def bundled_dir() -> Path:
    return Path(str(resources.files("ordfix") / "instances"))


def instance_dir() -> Path:
    """Directory searched for bare instance names: ``$ORDFIX_INSTANCE_DIR`` or the bundled set."""
    env = os.environ.get(INSTANCE_DIR_ENV)
    return Path(env) if env else bundled_dir()


def resolve_path(path: str | os.PathLike) -> Path:
    """Return ``path`` if it exists, else look it up by file name in :func:`instance_dir`."""
    p = Path(path)
    if p.exists():
        return p
    for base in (instance_dir(), bundled_dir()):
        for cand in (base / p.name, base / f"{p.name}.json"):
            if cand.exists():
                return cand
    raise ParseError(f"{path}: no such instance file (also searched {instance_dir()})")


# -----------------------------------------------------------------------------
# parsing
# -----------------------------------------------------------------------------


def _need(doc: Mapping, key: str, source: str):
    if key not in doc:
        raise ParseError(f"{source}: missing key {key!r}")
    return doc[key]


def _fraction(value, where: str) -> Fraction:
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {value!r} is not a rational") from exc


def _index_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError(f"{where}: expected a list of integer indices")
    return value


def parse_instance(doc: Mapping[str, Any], source: str = "<instance>", from_hasse: bool = False) -> Instance:
    """Build an :class:`Instance` from a decoded instance document.

    Raises
    ------
    ParseError
        Structural problems (missing keys, wrong types, bad indices).
    ValidationError
        An order or metric axiom fails; ``source`` is attached as ``.source``.
    """
    if not isinstance(doc, Mapping):
        raise ParseError(f"{source}: top level must be a JSON object")
    kind = doc.get("kind", "finite")
    declared = dict(doc.get("declared") or {})
    name = str(doc.get("name", Path(source).stem))
    if kind == "interval":
        return _parse_interval(doc, source, declared, name)
    if kind != "finite":
        raise ParseError(f"{source}: unknown kind {kind!r}")

    labels = _need(doc, "elements", source)
    if not isinstance(labels, list) or not labels:
        raise ParseError(f"{source}: 'elements' must be a non-empty list")
    labels = [str(v) for v in labels]
    n = len(labels)

    pairs = _need(doc, "order", source)
    if not isinstance(pairs, list):
        raise ParseError(f"{source}: 'order' must be a list of [i, j] pairs")
    for k, pr in enumerate(pairs):
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(v, int) for v in pr)):
            raise ParseError(f"{source}: order[{k}] = {pr!r} is not an [i, j] pair")
        if not all(0 <= v < n for v in pr):
            raise ParseError(f"{source}: order[{k}] = {pr} indexes outside 0..{n - 1}")
    if from_hasse:
        order = closure_from_pairs(n, pairs)
    else:
        order = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            order[i, j] = True

    rows = _need(doc, "metric", source)
    if not (isinstance(rows, list) and len(rows) == n and all(isinstance(r, list) and len(r) == n for r in rows)):
        raise ParseError(f"{source}: 'metric' must be a {n}x{n} array")
    metric = [[_fraction(v, f"{source}: metric[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]

    try:
        space = FiniteOrderedMetricSpace(order, metric, labels)
    except ValidationError as exc:
        exc.source = source
        raise

    f = _index_list(_need(doc, "f", source), f"{source}: 'f'")
    g = _index_list(_need(doc, "g", source), f"{source}: 'g'")
    Y = doc.get("Y")
    if Y is not None:
        Y = _index_list(Y, f"{source}: 'Y'")
    x0 = doc.get("x0")
    try:
        return Instance(space, MappingPair(f, g, declared), Y=Y, x0=x0, name=name)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{source}: {exc}") from exc


def _parse_interval(doc: Mapping, source: str, declared: dict, name: str) -> Instance:
    lo = _fraction(_need(doc, "lo", source), f"{source}: 'lo'")
    hi = _fraction(_need(doc, "hi", source), f"{source}: 'hi'")
    try:
        space = ContinuousIntervalSpace(lo, hi)
        f = parse_map(str(_need(doc, "f_name", source)))
        g = parse_map(str(doc.get("g_name", "identity")))
        Y = doc.get("Y")
        if Y is not None:
            Y = tuple(_fraction(v, f"{source}: 'Y'") for v in Y)
        x0 = doc.get("x0")
        if x0 is not None:
            x0 = _fraction(x0, f"{source}: 'x0'")
        return Instance(space, MappingPair(f, g, declared), Y=Y, x0=x0, name=name)
    except ParseError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{source}: {exc}") from exc


def load_instance(path: str | os.PathLike, from_hasse: bool = False) -> Instance:
    p = resolve_path(path)
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_instance(doc, str(p), from_hasse)


# -----------------------------------------------------------------------------
# serialization
# -----------------------------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    """Inverse of :func:`parse_instance`; rationals become ``"p/q"`` strings."""
    space, pair = instance.space, instance.pair
    out: dict[str, Any] = {}
    if instance.name:
        out["name"] = instance.name
    if space.is_finite:
        out["kind"] = "finite"
        out["elements"] = list(space.labels)
        out["order"] = [[int(i), int(j)] for i, j in np.argwhere(space.order)]
        out["metric"] = [[format_fraction(v) for v in row] for row in space.metric]
        out["f"] = [int(v) for v in pair.f]
        out["g"] = [int(v) for v in pair.g]
        if instance.Y is not None:
            out["Y"] = sorted(int(v) for v in instance.Y)
        if instance.x0 is not None:
            out["x0"] = int(instance.x0)
    else:
        out["kind"] = "interval"
        out["lo"], out["hi"] = format_fraction(space.lo), format_fraction(space.hi)
        out["f_name"], out["g_name"] = pair.f.spec, pair.g.spec
        if instance.Y is not None:
            out["Y"] = [format_fraction(v) for v in instance.Y]
        if instance.x0 is not None:
            out["x0"] = format_fraction(as_fraction(instance.x0))
    if pair.declared:
        out["declared"] = jsonable(dict(pair.declared))
    return out


def dump_instance(instance: Instance) -> str:
    """Deterministic JSON text: one key per line, one metric row per line."""
    doc = instance_to_dict(instance)
    parts = []
    for k in sorted(doc):
        v = doc[k]
        if k == "metric":
            rows = ",\n    ".join(json.dumps(r) for r in v)
            text = f"[\n    {rows}\n  ]"
        else:
            text = json.dumps(v, sort_keys=True)
        parts.append(f"  {json.dumps(k)}: {text}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save_instance(instance: Instance, path: str | os.PathLike) -> None:
    Path(path).write_text(dump_instance(instance))


def jsonable(obj: Any) -> Any:
    """Recursively convert library values to plain JSON types."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Chain):
        return [jsonable(v) for v in obj.nodes]
    if isinstance(obj, Check):
        return {"verdict": obj.verdict.value, "witness": jsonable(obj.witness), "note": obj.note}
    if isinstance(obj, (RealMap,)):
        return obj.spec
    if isinstance(obj, Mapping):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted((jsonable(v) for v in obj), key=repr)
    if isinstance(obj, (list, tuple, IndexMap, np.ndarray)):
        return [jsonable(v) for v in obj]
    return str(obj)


def _key(k: Any) -> str:
    if isinstance(k, tuple):
        return ",".join(str(jsonable(v)) for v in k)
    return str(jsonable(k))


# -----------------------------------------------------------------------------
# reports
# -----------------------------------------------------------------------------


def schema_path() -> Path:
    return Path(str(resources.files("ordfix") / "schemas" / "report.schema.json"))


def load_schema() -> dict:
    return json.loads(schema_path().read_text())


@dataclass
class Report:
    """Result of one CLI command.

    ``data`` is the single source of truth: :meth:`to_json` serializes it
    and :meth:`render` formats the same dictionary for people.
    """

    command: str
    exit_code: int = EXIT_OK
    data: dict[str, Any] = field(default_factory=dict)
    error: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "exit_code": self.exit_code,
            "ok": self.ok,
            "data": jsonable(self.data),
            "error": jsonable(self.error),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def render(self) -> str:
        doc = self.as_dict()
        lines = [f"== {doc['command']} ({'ok' if doc['ok'] else 'exit ' + str(doc['exit_code'])})"]
        _render_value(doc["data"], lines, 0)
        if doc["error"]:
            err = doc["error"]
            lines.append(f"error: {err.get('type')}: {err.get('message')}")
            if err.get("witness") not in (None, []):
                lines.append(f"  witness: {err['witness']}")
        return "\n".join(lines)


def _render_value(value: Any, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    if isinstance(value, dict):
        if _is_table(value):
            _render_table(value, lines, pad)
            return
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.append(f"{pad}{k}:")
                _render_value(v, lines, depth + 1)
            else:
                lines.append(f"{pad}{k}: {_short(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                _render_value(v, lines, depth + 1)
            else:
                lines.append(f"{pad}- {_short(v)}")
    else:
        lines.append(f"{pad}{_short(value)}")


def _is_table(value: dict) -> bool:
    # hypothesis tables: {"id": {"verdict": ..., ...}}
    return bool(value) and all(isinstance(v, dict) and "verdict" in v for v in value.values())


def _render_table(value: dict, lines: list[str], pad: str) -> None:
    width = max(len(k) for k in value)
    for k, v in value.items():
        extra = v.get("name") or v.get("note") or ""
        wit = v.get("witness")
        tail = f"  witness={_short(wit)}" if wit not in (None, [], {}) and v["verdict"] == "FAILS" else ""
        lines.append(f"{pad}{k.ljust(width)}  {v['verdict']:<8}  {extra}{tail}")


def _is_flat_list(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) and len(v) <= 12


def _short(v: Any, limit: int = 100) -> str:
    s = json.dumps(v) if isinstance(v, (list, dict)) else str(v)
    return s if len(s) <= limit else s[: limit - 3] + "..."
