"""Reading and checking the simulator's CSV result tables.

Every figure family consumes exactly one table kind.  The expected
header for each kind is pinned here, mirroring what the simulator
writes; a file whose header differs is rejected before any drawing
happens, with a column-level diff so the mismatch is obvious from the
command line.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import numpy as np

SCHEMAS: dict[str, tuple[str, ...]] = {
    "relaxation": ("strategy", "settle_time", "t_read", "trial", "g",
                   "out_of_window"),
    "bec_iterations": ("strategy", "trial", "iterations", "converged"),
    "bec_time": ("strategy", "t_read", "trials", "errors", "fraction"),
    "retention": ("strategy", "t_read", "trials", "errors", "fraction"),
    "scouting_success": ("op", "n", "strategy", "k", "decade", "t_read",
                         "i_total", "predicted", "truth", "correct"),
    "endurance": ("op", "n", "strategy", "k", "decade", "t_read", "i_total",
                  "predicted", "truth", "correct"),
    "current_histogram": ("n", "strategy", "k", "t_read", "i_total"),
    "adder": ("n_inputs", "strategy", "operands", "t_read", "i_total",
              "true_sum", "decoded_sum"),
    "adder3": ("n_inputs", "strategy", "operands", "t_read", "i_total",
               "true_sum", "decoded_sum"),
    "calibrate": ("quantity", "n", "strategy", "t_read", "current"),
}


class TableError(Exception):
    """The CSV file cannot be rendered as the requested table kind."""


class SchemaMismatch(TableError):
    """Header differs from the pinned schema; the message carries a diff."""

    def __init__(self, kind: str, path: str | Path,
                 found: Sequence[str]) -> None:
        self.kind = kind
        self.path = str(path)
        self.expected = SCHEMAS[kind]
        self.found = tuple(found)
        missing = [c for c in self.expected if c not in self.found]
        unexpected = [c for c in self.found if c not in self.expected]
        lines = [f"{self.path}: header does not match the {kind!r} table"]
        if missing:
            lines.append("  missing column(s):    " + ", ".join(missing))
        if unexpected:
            lines.append("  unexpected column(s): " + ", ".join(unexpected))
        if not missing and not unexpected:
            lines.append("  same columns, wrong order")
        lines.append("  expected: " + ",".join(self.expected))
        lines.append("  found:    " + ",".join(self.found))
        super().__init__("\n".join(lines))


def load_columns(kind: str, path: str | Path) -> dict[str, list[str]]:
    """Parse and validate one result CSV; return it column-major.

    Values stay as strings; each renderer converts the columns it uses.
    Raises TableError (or its SchemaMismatch subclass) for an empty
    file, a wrong header, a ragged row, or a table with no data rows.
    OSError propagates when the file cannot be read at all.
    """
    if kind not in SCHEMAS:
        raise ValueError(f"unknown table kind {kind!r}; expected one of "
                         + ", ".join(sorted(SCHEMAS)))
    expected = SCHEMAS[kind]
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise TableError(f"{path}: empty file (expected a "
                             f"{','.join(expected)} header)")
        if tuple(header) != expected:
            raise SchemaMismatch(kind, path, header)
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(expected):
                raise TableError(f"{path}: line {reader.line_num} has "
                                 f"{len(row)} fields, expected "
                                 f"{len(expected)}")
            rows.append(row)
    if not rows:
        raise TableError(f"{path}: no data rows to plot")
    return {name: [row[i] for row in rows]
            for i, name in enumerate(expected)}


def group_indices(table: dict[str, list[str]],
                  *keys: str) -> list[tuple[tuple[str, ...], list[int]]]:
    """Row indices grouped by the named columns, in first-seen order."""
    order: list[tuple[str, ...]] = []
    bucket: dict[tuple[str, ...], list[int]] = {}
    length = len(next(iter(table.values())))
    for i in range(length):
        key = tuple(table[k][i] for k in keys)
        if key not in bucket:
            bucket[key] = []
            order.append(key)
        bucket[key].append(i)
    return [(key, bucket[key]) for key in order]


def take(values: Sequence[str], indices: Sequence[int]) -> list[str]:
    return [values[i] for i in indices]


def floats(values: Sequence[str]) -> np.ndarray:
    return np.asarray(values, dtype=float)
