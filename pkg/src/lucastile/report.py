"""Run reports and their JSON, CSV and table forms.

JSON output is a single compact line with a fixed key order. Big integers
are written as decimal strings, so a report never contains a float and
re-serializing a parsed report gives the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

from . import __version__
from .errors import SerializationError
from .identities import IdentityReport
from .tiling import TilingVerdict

SCHEMA_ID = "lucastile/1"
FORMATS = ("json", "csv", "table")


@dataclass(frozen=True)
class Check:
    """A named boolean verdict with a small detail record."""

    name: str
    n: int
    ok: bool
    detail: dict = field(default_factory=dict)


Verdict = Union[IdentityReport, TilingVerdict, Check]


@dataclass
class Table:
    header: tuple[str, ...]
    rows: list[tuple]


@dataclass
class RunReport:
    command: str
    parameters: dict
    verdicts: list
    timings: Optional[dict] = None  # step -> microseconds
    version: str = __version__
    table: Optional[Table] = None

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)


def word_str(word: Sequence[int]) -> str:
    return "".join(str(int(e)) for e in word)


def _parse_word(s: str) -> tuple[int, ...]:
    return tuple(int(c) for c in s)


def verdict_to_dict(v: Verdict) -> dict:
    if isinstance(v, IdentityReport):
        d = {"id": v.identity_id, "n": v.n, "lhs": str(v.lhs), "rhs": str(v.rhs), "path": v.path, "ok": v.ok}
        if v.aux_n is not None:
            d["aux_n"] = v.aux_n
        return d
    if isinstance(v, TilingVerdict):
        if v.witness is None:
            witness = None
        elif v.reason == "pair":
            witness = [word_str(w) for w in v.witness]
        elif v.reason == "size":
            witness = [str(v.witness[0])]
        else:
            witness = [word_str(v.witness)]
        return {"check": "tiling", "method": v.method, "n": v.n, "ok": v.ok,
                "reason": v.reason, "witness": witness}
    if isinstance(v, Check):
        return {"check": v.name, "n": v.n, "ok": v.ok, "detail": v.detail}
    raise SerializationError(f"cannot serialize verdict of type {type(v).__name__}")


def verdict_from_dict(d: dict) -> Verdict:
    if "id" in d:
        return IdentityReport(d["id"], d["n"], int(d["lhs"]), int(d["rhs"]), d["path"], d.get("aux_n"))
    if d.get("check") == "tiling":
        w = d["witness"]
        if w is None:
            witness = None
        elif d["reason"] == "pair":
            witness = tuple(_parse_word(s) for s in w)
        elif d["reason"] == "size":
            witness = (int(w[0]),)
        else:
            witness = _parse_word(w[0])
        return TilingVerdict(d["method"], d["n"], d["ok"], d["reason"], witness)
    return Check(d["check"], d["n"], d["ok"], d["detail"])


def report_to_dict(report: RunReport) -> dict:
    if not report.verdicts:
        raise SerializationError("a report needs at least one verdict")
    d: dict[str, Any] = {
        "schema": SCHEMA_ID,
        "version": report.version,
        "command": report.command,
        "parameters": report.parameters,
        "ok": report.ok,
        "verdicts": [verdict_to_dict(v) for v in report.verdicts],
    }
    if report.timings is not None:
        d["timings"] = report.timings
    return d


def report_from_json(text: str) -> RunReport:
    d = json.loads(text)
    if d.get("schema") != SCHEMA_ID:
        raise SerializationError(f"unknown schema {d.get('schema')!r}")
    return RunReport(
        command=d["command"],
        parameters=d["parameters"],
        verdicts=[verdict_from_dict(v) for v in d["verdicts"]],
        timings=d.get("timings"),
        version=d["version"],
    )


def _summary_table(report: RunReport) -> Table:
    rows = []
    for v in report.verdicts:
        d = verdict_to_dict(v)
        if "id" in d:
            rows.append((f"identity {d['id']}", d["n"], d["path"], d["ok"]))
        elif d["check"] == "tiling":
            rows.append(("tiling", d["n"], d["method"], d["ok"]))
        else:
            rows.append((d["check"], d["n"], "", d["ok"]))
    return Table(("check", "n", "variant", "ok"), rows)


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows([_cell(c) for c in row] for row in table.rows)
    return buf.getvalue()


def _render_table(table: Table, ok: bool) -> str:
    cells = [list(table.header)] + [[_cell(c) for c in row] for row in table.rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(table.header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def serialize(report: RunReport, fmt: str = "json") -> bytes:
    if fmt not in FORMATS:
        raise SerializationError(f"unsupported format {fmt!r}")
    if not report.verdicts:
        raise SerializationError("a report needs at least one verdict")
    if fmt == "json":
        text = json.dumps(report_to_dict(report), separators=(",", ":"), ensure_ascii=True) + "\n"
    else:
        table = report.table or _summary_table(report)
        text = _render_csv(table) if fmt == "csv" else _render_table(table, report.ok)
    return text.encode("utf-8")


# words, voxel coordinates and counts are all digit strings
_DIGITS = {"type": "string", "pattern": "^[0-9]+$"}
_DECIMAL = {"type": "string", "pattern": "^-?[0-9]+$"}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "lucastile run report",
    "type": "object",
    "required": ["schema", "version", "command", "parameters", "ok", "verdicts"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "parameters": {"type": "object"},
        "ok": {"type": "boolean"},
        "timings": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "verdicts": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["id", "n", "lhs", "rhs", "path", "ok"],
                        "additionalProperties": False,
                        "properties": {
                            "id": {"enum": [1, 2, 3]},
                            "n": {"type": "integer", "minimum": 1},
                            "lhs": _DECIMAL,
                            "rhs": _DECIMAL,
                            "path": {"enum": ["closed_form", "tiling_odd", "tiling_even"]},
                            "ok": {"type": "boolean"},
                            "aux_n": {"type": "integer", "minimum": 3},
                        },
                    },
                    {
                        "type": "object",
                        "required": ["check", "method", "n", "ok", "reason", "witness"],
                        "additionalProperties": False,
                        "properties": {
                            "check": {"const": "tiling"},
                            "method": {"enum": ["twin_pair", "voxel_cover"]},
                            "n": {"type": "integer", "minimum": 1},
                            "ok": {"type": "boolean"},
                            "reason": {"enum": [None, "size", "pair", "uncovered", "overlap"]},
                            "witness": {"oneOf": [{"type": "null"}, {"type": "array", "items": _DIGITS}]},
                        },
                    },
                    {
                        "type": "object",
                        "required": ["check", "n", "ok", "detail"],
                        "additionalProperties": False,
                        "properties": {
                            "check": {"type": "string", "not": {"const": "tiling"}},
                            "n": {"type": "integer", "minimum": 1},
                            "ok": {"type": "boolean"},
                            "detail": {"type": "object"},
                        },
                    },
                ]
            },
        },
    },
}
