"""Verification records and their text/JSON renderings."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

EQUALITY, INEQUALITY, INFO = "equality", "inequality", "info"


def _plain(x):
    """Convert numpy scalars/arrays to JSON-native values; normalise -0.0."""
    if hasattr(x, "tolist"):
        x = x.tolist()
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, float)):
        x = float(x)
        return 0.0 if x == 0.0 else x
    if isinstance(x, complex):
        return [_plain(x.real), _plain(x.imag)]
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class CheckRecord:
    id: str
    description: str
    computed: object
    expected: object
    abs_err: float | None
    passed: bool
    kind: str = EQUALITY
    tag: str = "identity"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "computed": _plain(self.computed),
            "expected": _plain(self.expected),
            "abs_err": _plain(self.abs_err),
            "pass": bool(self.passed),
            "kind": self.kind,
            "tag": self.tag,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckRecord":
        return cls(
            id=d["id"],
            description=d["description"],
            computed=d["computed"],
            expected=d["expected"],
            abs_err=d["abs_err"],
            passed=d["pass"],
            kind=d.get("kind", EQUALITY),
            tag=d.get("tag", "identity"),
        )


@dataclass
class VerificationReport:
    name: str
    tol: float
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.kind != INFO and c.passed)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.kind != INFO and not c.passed)

    @property
    def info(self) -> int:
        return sum(1 for c in self.checks if c.kind == INFO)

    @property
    def exit_status(self) -> int:
        return 0 if self.failed == 0 else 1

    def by_id(self, check_id: str) -> CheckRecord:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "tol": self.tol,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "summary": {"passed": self.passed, "failed": self.failed, "info": self.info},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            name=d["name"],
            tol=d.get("tol", 0.0),
            checks=[CheckRecord.from_dict(c) for c in d["checks"]],
            notes=list(d.get("notes", [])),
        )


def _fmt(x) -> str:
    x = _plain(x)
    if x is None:
        return "-"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, list):
        return json.dumps(x) if len(json.dumps(x)) <= 40 else f"<{_shape(x)} array>"
    return str(x)


def _shape(x) -> str:
    dims = []
    while isinstance(x, list):
        dims.append(str(len(x)))
        x = x[0] if x else None
    return "x".join(dims)


def render_text(report: VerificationReport) -> str:
    rows = []
    for c in report.checks:
        status = "INFO" if c.kind == INFO else ("PASS" if c.passed else "FAIL")
        err = "-" if c.abs_err is None else f"{c.abs_err:.3g}"
        rows.append((status, c.id, _fmt(c.computed), _fmt(c.expected), err))
    header = ("status", "check", "computed", "expected", "abs_err")
    widths = [max(len(r[k]) for r in rows + [header]) for k in range(5)]
    line = lambda r: "  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip()  # noqa: E731
    out = [f"manifold: {report.name}   tol: {report.tol:g}", line(header), line(tuple("-" * w for w in widths))]
    out.extend(line(r) for r in rows)
    for note in report.notes:
        out.append(f"note: {note}")
    out.append(f"summary: {report.passed} passed, {report.failed} failed, {report.info} info")
    return "\n".join(out) + "\n"


def render_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_report(report: VerificationReport, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(report)
    if fmt == "json":
        return render_json(report)
    raise ValueError(f"unknown report format {fmt!r}; use 'text' or 'json'")


def parse_json_report(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))


__all__ = [
    "CheckRecord",
    "VerificationReport",
    "render_report",
    "render_text",
    "render_json",
    "parse_json_report",
    "EQUALITY",
    "INEQUALITY",
    "INFO",
]
