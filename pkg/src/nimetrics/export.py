"""Deterministic CSV/JSON export of relation-map datasets.

One long-form CSV per dataset with the fixed header ``x,y,value,series``:

* curves: x = index value, y = NI (or the second index for region curves),
  value empty, series = curve name;
* points: same shape, series = point name;
* surfaces: x, y = the two index axes, value = NI, series = surface name;
  undefined/infeasible cells keep the row with an empty value field.

Floats are written with 17 significant digits, so files are byte-identical
across runs for a fixed configuration. Each dataset carries a
``<name>.manifest.json`` with the tool version, the generating
configuration and its hash, and the SHA-256 of the written CSV.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

from .maps import CurveSamples, SpecialPoint, SurfaceGrid


def format_value(v: float | None) -> str:
    if v is None:
        return ""
    v = float(v)
    if math.isnan(v):
        return ""
    return f"{v:.17g}"


def rows_for_curve(curve: CurveSamples):
    for x, y in zip(curve.x, curve.y):
        yield (format_value(float(x)), format_value(float(y)), "", curve.name)


def rows_for_point(point: SpecialPoint):
    yield (format_value(point.x), format_value(point.y), "", point.name)


def rows_for_surface(grid: SurfaceGrid, series: str | None = None):
    name = series or f"{grid.x_name}-{grid.y_name}:{grid.mode}"
    for i, x in enumerate(grid.x):
        for j, y in enumerate(grid.y):
            v = float(grid.values[i, j]) if grid.defined[i, j] else None
            yield (format_value(float(x)), format_value(float(y)),
                   format_value(v), name)


def write_dataset(
    out_dir: str | Path,
    name: str,
    rows,
    config: dict,
    tool_version: str,
) -> tuple[Path, Path]:
    """Write ``<name>.csv`` plus its manifest; returns both paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    body = "x,y,value,series\n" + "".join(",".join(row) + "\n" for row in rows)
    data = body.encode()
    csv_path.write_bytes(data)
    manifest = {
        "tool": "nimetrics",
        "version": tool_version,
        "dataset": name,
        "config": config,
        "config_hash": hashlib.sha256(
            json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
        ).hexdigest(),
        "files": [{"name": csv_path.name, "sha256": hashlib.sha256(data).hexdigest()}],
    }
    manifest_path = out_dir / f"{name}.manifest.json"
    manifest_path.write_bytes(
        (json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode()
    )
    return csv_path, manifest_path
