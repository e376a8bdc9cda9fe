"""Report rows, the overall status, and the text / structured renderers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "semiflat-report/1"

OK, VIOLATION, INCONCLUSIVE, ERROR = "ok", "violation", "inconclusive", "error"

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3
EXIT_INPUT = 4


@dataclass
class Row:
    name: str
    kind: str
    status: str
    method: str = ""
    verdict: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    seconds: float | None = None

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "status": self.status,
            "method": self.method,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "notes": list(self.notes),
            "caps": self.caps,
        }
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class AnalysisReport:
    title: str
    rows: list[Row] = field(default_factory=list)

    @property
    def status(self) -> str:
        states = {r.status for r in self.rows}
        if VIOLATION in states:
            return "violations"
        if ERROR in states or INCONCLUSIVE in states:
            return "inconclusive"
        return "ok"

    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "violations": EXIT_VIOLATION, "inconclusive": EXIT_INCONCLUSIVE}[self.status]

    def as_dict(self, timing: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "title": self.title,
            "status": self.status,
            "rows": [r.as_dict(timing) for r in self.rows],
        }


def jsonable(value):
    """Turn verdict payloads (sets, tuples, dataclasses with repr) into JSON values."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return repr(value)


def _fmt(v) -> str:
    if v is None:
        return "inconclusive"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_text(report: AnalysisReport, timing: bool = False) -> str:
    lines = [f"== {report.title} =="]
    width = max((len(r.name) for r in report.rows), default=4)
    for r in report.rows:
        tail = f"  ({r.seconds:.2f}s)" if timing and r.seconds is not None else ""
        method = f"  [{r.method}]" if r.method else ""
        lines.append(f"{r.status.upper():<12} {r.name:<{width}}  {r.kind}{method}{tail}")
        for k, v in r.verdict.items():
            lines.append(f"    {k}: {_fmt(v)}")
        for k, v in r.witnesses.items():
            lines.append(f"    witness {k}: {_fmt(v)}")
        for note in r.notes:
            lines.append(f"    note: {note}")
        if r.caps:
            lines.append("    caps: " + ", ".join(f"{k}={v}" for k, v in sorted(r.caps.items())))
    lines.append(f"status: {report.status}")
    return "\n".join(lines) + "\n"


def render_structured(report: AnalysisReport, timing: bool = False) -> str:
    return json.dumps(jsonable(report.as_dict(timing)), indent=2, sort_keys=True) + "\n"


def render(report: AnalysisReport, fmt: str = "text", timing: bool = False) -> str:
    if fmt == "structured":
        return render_structured(report, timing)
    return render_text(report, timing)
