"""CSV / JSON emitters for ResultTable."""
from __future__ import annotations

import csv
import io
import json
import math

from .runners import ResultTable

SIG_DIGITS = 12


def format_value(v) -> str:
    if isinstance(v, bool) or v is None:
        return {True: "true", False: "false", None: ""}[v]
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, float) or hasattr(v, "dtype"):
        v = float(v)
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return f"{v:.{SIG_DIGITS}g}"
    return str(v)


def to_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(row.get(c)) for c in table.columns])
    return buf.getvalue()


def _jsonable(v):
    if hasattr(v, "item"):
        return v.item()
    return v


def to_json(table: ResultTable) -> str:
    rows = []
    for row in table.rows:
        entry = {k: _jsonable(v) for k, v in row.items()}
        entry["provenance"] = table.config
        rows.append(entry)
    doc = {
        "experiment": table.experiment,
        "columns": table.columns,
        "config": table.config,
        "checks": table.checks,
        "rows": rows,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def render(table: ResultTable, fmt: str = "csv") -> str:
    return to_json(table) if fmt == "json" else to_csv(table)
