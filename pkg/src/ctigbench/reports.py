"""Results and plot-data emission.

One versioned JSON document per run plus one CSV per plot-data table.
Output is a pure function of its inputs: keys are sorted, floats use their
shortest round-trip representation, and nothing time- or host-dependent is
written, so identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

REPORT_VERSION = 1


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, float) and value != value:  # NaN -> null for valid JSON
        return None
    return value


def _cell(value) -> str:
    if isinstance(value, (np.floating,)):
        value = float(value)
    if isinstance(value, (np.integer,)):
        value = int(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_table(path, columns, rows) -> Path:
    """Write one plot-data table as CSV with a header row."""
    lines = [",".join(columns)]
    for row in rows:
        if isinstance(row, dict):
            lines.append(",".join(_cell(row[c]) for c in columns))
        else:
            lines.append(",".join(_cell(v) for v in row))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_report(results: dict, out_dir, tables: dict | None = None) -> dict:
    """Write report.json and the per-figure plot-data tables.

    `tables` maps table names to (columns, rows); every table is also
    referenced from the report document.  Returns the written paths.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = tables or {}

    paths = {}
    for name, (columns, rows) in tables.items():
        paths[name] = str(write_table(out_dir / f"{name}.csv", columns, rows))

    document = {
        "report_version": REPORT_VERSION,
        "tables": {name: Path(p).name for name, p in paths.items()},
    }
    document.update(_jsonable(results))
    report_path = out_dir / "report.json"
    report_path.write_text(
        json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    paths["report"] = str(report_path)
    return paths
