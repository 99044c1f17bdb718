"""Deterministic report emission: delimited text and JSON.

All floats are written with 17 significant digits, '.' decimal
separator and '\\n' line endings, so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

RAD_PER_DEG = math.pi / 180.0


def fmt(value) -> str:
    """Render one float with 17 significant digits."""
    return format(float(value), ".17g")


def to_unit(value_rad: float, units: str) -> float:
    return value_rad / RAD_PER_DEG if units == "deg" else value_rad


def write_csv(path: Path, header, rows) -> None:
    """Write rows of already-formatted strings (or floats) as CSV."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else fmt(cell) for cell in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def write_json(path: Path, payload: dict) -> None:
    Path(path).write_text(dumps(payload), encoding="ascii")


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
