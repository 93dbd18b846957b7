"""Deterministic rendering of command results as JSON, CSV or plain text."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

__all__ = ["Report", "emit_report", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1


class Report:
    """A command result: a JSON payload, optional CSV rows and optional text lines."""

    def __init__(self, payload: dict, rows: list[dict] | None = None, lines: list[str] | None = None,
                 ok: bool = True):
        self.payload = {"schema": SCHEMA_VERSION, **payload}
        self.rows = rows
        self.lines = lines
        self.ok = ok


def _default(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.payload, sort_keys=True, indent=2, default=_default) + "\n").encode()
    if fmt == "csv":
        rows = report.rows
        if rows is None:
            rows = [{k: (json.dumps(v, sort_keys=True, default=_default) if isinstance(v, (dict, list)) else v)
                     for k, v in sorted(report.payload.items())}]
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: _default(v) if isinstance(v, Fraction) else v for k, v in r.items()})
        return buf.getvalue().encode()
    if fmt == "pretty":
        lines = report.lines
        if lines is None:
            lines = [f"{k}: {json.dumps(v, sort_keys=True, default=_default)}" for k, v in sorted(report.payload.items())]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
