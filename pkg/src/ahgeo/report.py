"""Structured result documents and their serializations.

Every runner produces a ReportDocument: a flat list of named checks plus
optional numeric series and CSV tables.  The JSON form is deterministic
(sorted keys, fixed float formatting from repr) apart from the timestamp,
so reruns can be diffed directly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone

from . import __version__

SCHEMA = "ahgeo-report/1"

# where a check's expected value comes from; "identity" marks residuals
# that must vanish, "dual-route" marks two independent computations of
# the same quantity compared against each other
SOURCES = ("reference", "closed-form", "identity", "dual-route")

FORMATS = ("json", "csv", "plotdata")


@dataclass(frozen=True)
class CheckResult:
    """One named pass/fail row.

    value is the measured quantity (float, bool, tuple or None); expected
    and tolerance describe the gate when there is one.  Rows that report a
    finding rather than enforce a gate (a classification verdict, say)
    carry passed=True with source=None.
    """
    name: str
    passed: bool
    value: object = None
    expected: object = None
    tolerance: float | None = None
    residual: float | None = None
    source: str | None = None
    detail: str = ""

    def __post_init__(self):
        if self.source is not None and self.source not in SOURCES:
            raise ValueError(
                f"check source must be one of {SOURCES}, got {self.source!r}")


@dataclass(frozen=True)
class ReportDocument:
    schema: str
    scenario: str
    tool_version: str
    timestamp: str
    config: dict
    checks: tuple
    passed: bool
    series: dict = field(default_factory=dict)   # name -> [(x, y), ...]
    tables: dict = field(default_factory=dict)   # name -> CSV text
    primary_table: str | None = None


def new_report(scenario, config, checks, series=None, tables=None,
               primary_table=None):
    """Assemble a document; passed is the conjunction of the check rows."""
    checks = tuple(checks)
    return ReportDocument(
        schema=SCHEMA,
        scenario=str(scenario),
        tool_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        config=dict(config or {}),
        checks=checks,
        passed=all(c.passed for c in checks),
        series={k: [(float(x), float(y)) for x, y in v]
                for k, v in (series or {}).items()},
        tables=dict(tables or {}),
        primary_table=primary_table,
    )


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj if obj == obj and abs(obj) != float("inf") else repr(obj)
    if hasattr(obj, "item"):      # numpy scalars
        return _json_safe(obj.item())
    if hasattr(obj, "tolist"):    # numpy arrays
        return _json_safe(obj.tolist())
    return str(obj)


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(_json_safe(v), sort_keys=True)
    return str(v)


def emit(report, format="json"):
    """Serialize a report to bytes in one of json, csv, plotdata."""
    if format == "json":
        doc = _json_safe(asdict(report))
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()

    if format == "csv":
        # a run with a designated table (the catenoid profile, say) emits
        # that table; otherwise the check rows are flattened
        if report.primary_table is not None:
            return report.tables[report.primary_table].encode()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "value", "expected",
                    "tolerance", "residual", "source", "detail"])
        for c in report.checks:
            w.writerow([c.name, _csv_cell(c.passed), _csv_cell(c.value),
                        _csv_cell(c.expected), _csv_cell(c.tolerance),
                        _csv_cell(c.residual), _csv_cell(c.source), c.detail])
        return buf.getvalue().encode()

    if format == "plotdata":
        blocks = []
        for name in sorted(report.series):
            lines = [f"# {name}"]
            lines += [f"{x!r} {y!r}" for x, y in report.series[name]]
            blocks.append("\n".join(lines))
        if not blocks:
            blocks = [f"# {report.scenario}: no series"]
        return ("\n\n".join(blocks) + "\n").encode()

    raise ValueError(f"unknown format {format!r}; choose from {FORMATS}")
