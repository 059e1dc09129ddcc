"""Data file and sidecar writers."""

import csv
import json
import logging
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def format_number(value: float | int, digits: int) -> str:
    """Format a number with a fixed count of significant digits."""
    if isinstance(value, int | bool):
        return str(int(value))
    if math.isnan(value):
        return "nan"
    return f"{value:.{digits}g}"


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Sequence[Sequence[float]],
    digits: int,
) -> Path:
    """Write a header row and numeric rows.

    Args:
        path: Destination file.
        columns: Column names.
        rows: Row values, each aligned with ``columns``.
        digits: Significant digits per value.

    Returns:
        The written path.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(v, digits) for v in row])
    logger.debug(f"Wrote {len(rows)} rows to {path}")
    return path


def _json_number(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_json_table(
    path: Path,
    columns: Sequence[str],
    rows: Sequence[Sequence[float]],
    summary: Mapping[str, Any],
) -> Path:
    """Write the table as ``{"columns": {name: [...]}, "summary": {...}}``; NaN becomes null."""
    path.parent.mkdir(parents=True, exist_ok=True)
    table = {name: [_json_number(row[j]) for row in rows] for j, name in enumerate(columns)}
    payload = {"columns": table, "summary": {k: _json_number(v) for k, v in summary.items()}}
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def sidecar_path(data_path: Path) -> Path:
    """``result.csv`` -> ``result.meta.json``."""
    return data_path.with_name(f"{data_path.stem}.meta.json")


def write_sidecar(path: Path, payload: Mapping[str, Any]) -> Path:
    """Write the reproducibility sidecar with sorted keys."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return path
