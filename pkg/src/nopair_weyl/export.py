"""CSV / JSON serialization of result tables."""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

FLOAT_DIGITS = 17


def _plain(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


def _csv_cell(value) -> str:
    value = _plain(value)
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return repr(value)
        return f"{value:.{FLOAT_DIGITS}g}"
    if value is None:
        return ""
    return str(value)


def to_csv(records: list[dict], columns: list[str] | None = None) -> str:
    """RFC-4180 style table with a mandatory header row and ``\\n`` line ends."""
    if columns is None:
        columns = list(records[0]) if records else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_csv_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def to_json(records: list[dict], meta: dict) -> str:
    """Single object ``{"meta": ..., "records": [...]}`` with sorted keys.

    Floats use Python's shortest round-trip repr, which is exact for doubles.
    """
    doc = {"meta": _plain(meta), "records": _plain(records)}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, allow_nan=True, indent=1) + "\n"


def render(records: list[dict], meta: dict, fmt: str = "csv", columns: list[str] | None = None) -> str:
    if fmt == "csv":
        return to_csv(records, columns)
    if fmt == "json":
        return to_json(records, meta)
    raise ValueError(f"unknown output format {fmt!r}")
