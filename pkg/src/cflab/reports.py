"""Byte-deterministic rendering of reports to JSON and CSV.

Identical inputs must yield identical bytes: floats go through repr (via
json) or str, dict key order is fixed by construction, newlines are always
"\\n", and nothing time- or host-dependent is ever written.
"""

from __future__ import annotations

import csv
import io
import json

from .cfcore import Word, cylinder_interval, format_rational, format_word
from .measure import BoundedMeasure, measure_of_cylinder

CSV_COLUMNS = (
    "n",
    "pattern",
    "mode",
    "count",
    "freq_num",
    "freq_den",
    "freq_float",
    "gamma_float",
    "abs_err",
)


def _json_bytes(obj: dict) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode()


def measure_report(w: Word, with_interval: bool = False) -> dict:
    m = measure_of_cylinder(w)
    report = {
        "word": format_word(w),
        "log2_arg": format_rational(m.arg),
        "float": round(m.float, 6),
    }
    if with_interval:
        iv = cylinder_interval(w)
        report["interval"] = [str(iv.lo), str(iv.hi)]
    return report


def bounded_measure_report(bm: BoundedMeasure, **extra) -> dict:
    lo, hi = bm.bracket()
    report = dict(extra)
    report.update(
        {
            "log2_arg": format_rational(bm.lower.arg),
            "float": round(bm.float_value, 6),
            "tail_log2_arg": format_rational(bm.tail_bound.arg),
            "bracket": [lo, hi],
        }
    )
    return report


def measure_text(w: Word, with_interval: bool = False) -> str:
    m = measure_of_cylinder(w)
    lines = [f"log2({format_rational(m.arg)}) ≈ {m.float:.6f}"]
    if with_interval:
        iv = cylinder_interval(w)
        lines.append(f"({iv.lo}, {iv.hi})")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> bytes:
    return _json_bytes(report)


def render_experiment_csv(report: dict) -> bytes:
    """Config echo as comment lines, then the fixed column schema."""
    buf = io.StringIO()
    for key, value in report["config"].items():
        if isinstance(value, list):
            value = ";".join(str(v) for v in value)
        buf.write(f"# {key}={value}\n")
    buf.write(f"# verdict={report['verdict']}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report["rows"]:
        writer.writerow([row[col] for col in CSV_COLUMNS])
    return buf.getvalue().encode()


def render_report(report: dict, fmt: str) -> bytes:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_experiment_csv(report)
    raise ValueError(f"unknown format {fmt!r}")
