"""Check records, reports and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

FORMATS = ("json", "csv", "text")
CSV_COLUMNS = ("name", "catalog", "residual", "tolerance", "pass", "worst_point", "note")
OUT_ENV = "NKS6_OUT"


@dataclass
class Check:
    """One verified quantity.

    ``tolerance=None`` marks an informational record (a measured hypothesis);
    ``residual=None`` with a note marks a check that was not applicable.
    """

    name: str
    residual: float | None
    tolerance: float | None
    worst_point: list = field(default_factory=list)
    catalog: str = ""
    note: str = ""

    def __post_init__(self):
        if self.residual is not None:
            r = float(self.residual)
            if not math.isfinite(r):
                self.note = (self.note + "; " if self.note else "") + f"non-finite residual {r}"
                r = None
                self.tolerance = 0.0 if self.tolerance is None else self.tolerance
            self.residual = r
        self.worst_point = [float(x) for x in np.ravel(self.worst_point)]

    @property
    def passed(self):
        if self.tolerance is None:
            return True
        if self.residual is None:
            return "non-finite" not in self.note
        return self.residual <= self.tolerance

    def as_dict(self):
        return {
            "name": self.name,
            "catalog": self.catalog,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "worst_point": self.worst_point,
            "note": self.note,
        }


def conditional(name, tolerance, reason, catalog=""):
    return Check(name, None, tolerance, catalog=catalog, note=f"conditional: {reason}")


class MaxTracker:
    """Running maximum of a residual together with the chart point where it occurred."""

    def __init__(self):
        self.value = None
        self.point = []

    def update(self, residual, point):
        r = float(residual)
        # a NaN, once seen, is kept as the worst value
        if self.value is None or (not math.isnan(self.value)
                                  and (math.isnan(r) or r > self.value)):
            self.value, self.point = r, list(np.ravel(point))
        return self

    def check(self, name, tolerance, catalog="", note=""):
        if self.value is None:
            return conditional(name, tolerance, "no sample points qualified", catalog)
        return Check(name, self.value, tolerance, self.point, catalog, note)


@dataclass
class Report:
    suite: str
    version: str
    seed: int
    checks: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    timestamp: str = ""

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self, timestamp=True):
        out = {
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "pass": self.passed,
            "metadata": self.metadata,
            "checks": [c.as_dict() for c in self.checks],
        }
        if timestamp:
            out["timestamp"] = self.timestamp or now()
        return out


def now():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def to_json(report, timestamp=True):
    return json.dumps(report.as_dict(timestamp), indent=2) + "\n"


def to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for c in report.checks:
        d = c.as_dict()
        writer.writerow([
            d["name"], d["catalog"],
            "" if d["residual"] is None else repr(d["residual"]),
            "" if d["tolerance"] is None else repr(d["tolerance"]),
            "true" if d["pass"] else "false",
            " ".join(repr(x) for x in d["worst_point"]),
            d["note"],
        ])
    return buf.getvalue()


def _fmt(x):
    return "-" if x is None else f"{x:.3e}"


def _status(check):
    if check.tolerance is None:
        return "INFO"
    if check.note.startswith("conditional"):
        return "COND"
    return "PASS" if check.passed else "FAIL"


def to_text(report):
    rows = [(c.catalog or "-", c.name, _fmt(c.residual), _fmt(c.tolerance), _status(c), c.note)
            for c in report.checks]
    head = ("catalog", "check", "residual", "tolerance", "status", "note")
    widths = [max(len(r[k]) for r in rows + [head]) for k in range(5)]
    lines = [f"suite {report.suite}  seed {report.seed}  version {report.version}"]
    for key, val in report.metadata.items():
        lines.append(f"  {key}: {val}")
    lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)) + "  note")
    for r in rows:
        lines.append(("  ".join(v.ljust(w) for v, w in zip(r, widths)) + "  " + r[5]).rstrip())
    n_fail = len(report.failures)
    lines.append(f"{len(report.checks)} checks, {n_fail} failed: "
                 + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


RENDERERS = {"json": to_json, "csv": to_csv, "text": to_text}
SUFFIX = {"json": ".json", "csv": ".csv", "text": ".txt"}


def render(report, fmt):
    if fmt not in RENDERERS:
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    return RENDERERS[fmt](report)


def emit_report(report, fmt="json", out_dir=None):
    """Write ``<out_dir>/<suite><suffix>`` and return its path.

    ``out_dir`` defaults to ``$NKS6_OUT``; with neither set, nothing is
    written and ``None`` is returned.
    """
    out_dir = out_dir or os.environ.get(OUT_ENV)
    if not out_dir:
        return None
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / f"{report.suite}{SUFFIX[fmt]}"
    target.write_text(render(report, fmt), encoding="utf-8")
    return target
