"""Result files: atomic CSV/JSON writers and confidence intervals.

Files are written to a temporary sibling and moved into place with
``os.replace``, so a crashed or interrupted run never leaves a truncated
output behind.  Float formatting is fixed (``%.10g``) to keep the
byte-identical-output contract independent of Python repr details.
"""

from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path
from typing import Iterable, Sequence

Z_95 = 1.959963984540054  # two-sided 95% normal quantile


def format_value(value) -> str:
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def write_csv_atomic(path: str | Path, header: Sequence[str],
                     rows: Iterable[Sequence]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()


def write_json_atomic(path: str | Path, doc: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()


def wald_interval(successes: int, total: int) -> tuple[float, float]:
    """95% normal-approximation interval for a binomial fraction, clipped."""
    if total < 1:
        raise ValueError("total must be >= 1")
    if not 0 <= successes <= total:
        raise ValueError("successes must lie in [0, total]")
    p = successes / total
    half = Z_95 * math.sqrt(p * (1.0 - p) / total)
    return max(0.0, p - half), min(1.0, p + half)


def fraction_summary(successes: int, total: int) -> dict:
    """JSON-ready fraction with its 95% Wald interval."""
    lo, hi = wald_interval(successes, total)
    return {
        "count": successes,
        "total": total,
        "fraction": successes / total,
        "ci95": [lo, hi],
    }
