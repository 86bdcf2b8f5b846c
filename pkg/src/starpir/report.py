"""Structured reports and their json/csv rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

FORMATS = ("json", "csv")


@dataclass
class Report:
    """A named table of rows plus free-form metadata.

    ``columns`` fixes the csv header; when omitted it is the union of the
    (flattened) row keys in order of first appearance.
    """

    kind: str
    rows: list[dict] = dc_field(default_factory=list)
    meta: dict = dc_field(default_factory=dict)
    columns: list[str] | None = None
    status: int = 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "meta": self.meta, "rows": self.rows}


def plain(x):
    """Recursively convert to json-compatible values; rationals become "num/den"."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if hasattr(x, "to_dict"):
        return plain(x.to_dict())
    return x


def flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def report_emit(report: Report, fmt: str = "json") -> bytes:
    """Deterministic bytes for ``report`` in json or csv."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    rows = [plain(r) for r in report.rows]
    if fmt == "json":
        doc = {"kind": report.kind, "meta": plain(report.meta), "rows": rows}
        return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    flat = [flatten(r) for r in rows]
    cols = list(report.columns) if report.columns is not None else []
    if report.columns is None:
        for r in flat:
            cols.extend(k for k in r if k not in cols)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(cols)
    for r in flat:
        wr.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue().encode("utf-8")


def parse_report(data: bytes, fmt: str = "json"):
    """Inverse of report_emit up to the flattening done for csv."""
    text = data.decode("utf-8")
    if fmt == "json":
        doc = json.loads(text)
        return Report(doc["kind"], doc["rows"], doc["meta"])
    rd = list(csv.reader(io.StringIO(text)))
    header, body = rd[0], rd[1:]
    return Report("csv", [dict(zip(header, r)) for r in body], columns=header)


__all__ = ["FORMATS", "Report", "flatten", "parse_report", "plain", "report_emit"]
