"""Serialization of search and verification results.

Every row carries the fixed schema ``ROW_FIELDS``; extra keys (regime,
notes, reference values, the argmax configuration) ride along. JSON output
is canonical: sorted keys, floats written with 17 significant digits, NaN
and infinities as ``null``. Parsing and re-emitting a report reproduces it
byte for byte.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable

from .functionals import BoundResult, FunctionalSpec
from .measures import AtomicMeasure
from .search import SearchReport

ROW_FIELDS = ("class", "profile", "lambda", "n", "m", "bound", "applicable",
              "best_value", "gap", "seed", "evaluations")


def _float_token(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def canonical_dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float_token(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {canonical_dumps(obj[k], indent, _level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(canonical_dumps(v) for v in obj) + "]"
        items = [pad + canonical_dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _config_json(config) -> Any:
    if isinstance(config, AtomicMeasure):
        return config.to_json()
    return config


def base_row(class_label: str, profile: str, spec: FunctionalSpec, bound: BoundResult) -> dict:
    return {
        "class": class_label,
        "profile": profile,
        "lambda": spec.lam,
        "n": spec.n,
        "m": spec.m,
        "bound": bound.value if bound.applicable else math.nan,
        "applicable": bound.applicable,
        "regime": bound.regime,
        "best_value": math.nan,
        "gap": math.nan,
        "seed": 0,
        "evaluations": 0,
    }


def report_row(rep: SearchReport) -> dict:
    row = base_row(rep.class_label, rep.profile, rep.spec, rep.bound)
    row.update({
        "best_value": rep.best_value,
        "gap": rep.gap,
        "seed": rep.seed,
        "evaluations": rep.evaluations,
        "converged": rep.converged,
        "note": rep.note,
        "best_config": _config_json(rep.best_config),
        "references": dict(rep.references),
    })
    return row


def to_json(command: str, rows: Iterable[dict], status: str = "ok") -> str:
    doc = {"command": command, "status": status, "schema": list(ROW_FIELDS), "rows": list(rows)}
    return canonical_dumps(doc) + "\n"


def _flat(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if k == "best_config":
            out[k] = json.dumps(v, sort_keys=True)
        elif k == "references":
            out.update({f"ref_{rk}": rv for rk, rv in v.items()})
        elif isinstance(v, dict):
            out[k] = json.dumps(v, sort_keys=True)
        else:
            out[k] = v
    return out


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "" if not math.isfinite(v) else format(v, ".17g")
    return str(v)


def to_csv(rows: Iterable[dict]) -> str:
    flat = [_flat(r) for r in rows]
    extra = sorted({k for r in flat for k in r} - set(ROW_FIELDS))
    header = list(ROW_FIELDS) + extra
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in flat:
        writer.writerow([_cell(r.get(k, "")) for k in header])
    return buf.getvalue()


TABLE_COLUMNS = ("class", "lambda", "n", "m", "bound", "best_value", "gap", "regime", "note")


def to_table(rows: Iterable[dict]) -> str:
    def fmt(v):
        if isinstance(v, float):
            return "-" if not math.isfinite(v) else f"{v:.10g}"
        return str(v)

    body = [[fmt(r.get(c, "")) for c in TABLE_COLUMNS] for r in rows]
    widths = [max([len(c)] + [len(b[i]) for b in body]) for i, c in enumerate(TABLE_COLUMNS)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(TABLE_COLUMNS, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(v.ljust(w) for v, w in zip(b, widths)).rstrip() for b in body]
    return "\n".join(lines) + "\n"


def render(fmt: str, command: str, rows: list[dict], status: str = "ok") -> str:
    if fmt == "json":
        return to_json(command, rows, status)
    if fmt == "csv":
        return to_csv(rows)
    return to_table(rows)
