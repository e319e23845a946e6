"""Hand-built miniature tables, one per kind, for the figure tests.

The rows are small enough to check aggregations by hand but still hit
every grouping axis the renderers use (multiple strategies, read
times, operand counts, decades).
"""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

from simfigs.tables import SCHEMAS

SAMPLES: dict[str, list[tuple]] = {
    "relaxation": [
        ("immediate", 0.0, 0.0, 0, 78.1, 0),
        ("immediate", 0.0, 0.0, 1, 81.5, 0),
        ("immediate", 0.0, 3600.0, 0, 71.2, 1),
        ("immediate", 0.0, 3600.0, 1, 79.0, 0),
        ("settled", 5.0, 0.0, 0, 80.3, 0),
        ("settled", 5.0, 0.0, 1, 77.6, 0),
        ("settled", 5.0, 3600.0, 0, 78.8, 0),
        ("settled", 5.0, 3600.0, 1, 76.9, 0),
    ],
    "bec_iterations": [
        ("immediate", 0, 3, 1),
        ("immediate", 1, 5, 1),
        ("settled", 0, 7, 1),
        ("settled", 1, 12, 0),
    ],
    "bec_time": [
        ("immediate", 0.0, 512, 0, 0.0),
        ("immediate", 5.0, 512, 11, 0.021484375),
        ("immediate", 3600.0, 512, 71, 0.138671875),
        ("settled", 0.0, 512, 0, 0.0),
        ("settled", 5.0, 512, 0, 0.0),
        ("settled", 3600.0, 512, 3, 0.005859375),
    ],
    "retention": [
        ("immediate", 0.0, 256, 0, 0.0),
        ("immediate", 3600.0, 256, 40, 0.15625),
        ("settled", 0.0, 256, 0, 0.0),
        ("settled", 3600.0, 256, 1, 0.00390625),
    ],
    "scouting_success": [
        ("nand", 2, "raw", 0, 0, 0.0, 1.62, 1, 1, 1),
        ("nand", 2, "raw", 1, 0, 0.0, 41.0, 1, 1, 1),
        ("nand", 2, "raw", 2, 0, 0.0, 80.9, 0, 0, 1),
        ("xor", 2, "raw", 1, 0, 0.0, 40.2, 1, 1, 1),
        ("xor", 2, "raw", 2, 0, 0.0, 81.7, 0, 0, 1),
        ("xor", 2, "raw", 0, 0, 0.0, 39.9, 1, 0, 0),
        ("nand", 2, "settled", 0, 0, 0.0, 1.70, 1, 1, 1),
        ("nand", 2, "settled", 2, 0, 0.0, 79.4, 0, 0, 1),
        ("xor", 2, "settled", 2, 0, 0.0, 80.0, 0, 0, 1),
    ],
    "endurance": [
        ("nor", 4, "settled", 0, 0, 0.0, 1.8, 1, 1, 1),
        ("nor", 4, "settled", 2, 0, 0.0, 80.1, 0, 0, 1),
        ("nor", 4, "settled", 0, 6, 0.0, 2.2, 1, 1, 1),
        ("nor", 4, "settled", 3, 6, 0.0, 121.0, 0, 0, 1),
        ("xor", 4, "settled", 1, 0, 0.0, 40.7, 1, 1, 1),
        ("xor", 4, "settled", 1, 6, 0.0, 44.1, 1, 1, 1),
    ],
    "current_histogram": [
        (2, "settled", 0, 0.0, 1.61),
        (2, "settled", 0, 0.0, 1.66),
        (2, "settled", 1, 0.0, 41.2),
        (2, "settled", 1, 0.0, 40.4),
        (2, "settled", 2, 0.0, 80.6),
        (2, "settled", 2, 0.0, 79.7),
        (2, "raw", 1, 0.0, 38.9),
        (2, "raw", 2, 0.0, 84.2),
    ],
    "adder": [
        (2, "settled", "0;0", 0.0, 20.1, 0, 0),
        (2, "settled", "0;1", 0.0, 29.8, 1, 1),
        (2, "settled", "1;2", 0.0, 50.6, 3, 3),
        (2, "settled", "3;3", 0.0, 80.2, 6, 5),
        (2, "immediate", "2;2", 3600.0, 57.9, 4, 4),
        (2, "immediate", "3;2", 3600.0, 66.3, 5, 6),
    ],
    "adder3": [
        (3, "settled", "0;0;0", 0.0, 30.2, 0, 0),
        (3, "settled", "1;1;2", 0.0, 70.4, 4, 4),
        (3, "settled", "3;3;3", 0.0, 119.6, 9, 9),
        (3, "settled", "2;0;1", 0.0, 60.9, 3, 3),
    ],
    "calibrate": [
        ("ref_low", 2, "raw", 0.0, 21.3),
        ("ref_high", 2, "raw", 0.0, 60.8),
        ("ref_low", 4, "raw", 0.0, 20.9),
        ("ref_high", 4, "raw", 0.0, 100.4),
        ("ref_low", 2, "settled", 0.0, 21.0),
        ("ref_high", 2, "settled", 0.0, 61.2),
        ("ref_low", 4, "settled", 0.0, 20.7),
        ("ref_high", 4, "settled", 0.0, 101.1),
    ],
}


def write_table(path: Path, kind: str, rows=None, header=None) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(SCHEMAS[kind] if header is None else header)
        writer.writerows(SAMPLES[kind] if rows is None else rows)
    return path


@pytest.fixture
def samples():
    return SAMPLES


@pytest.fixture
def sample_csv(tmp_path):
    """Factory writing one miniature table; keyword overrides for abuse."""

    def make(kind: str, rows=None, header=None) -> Path:
        return write_table(tmp_path / f"{kind}.csv", kind, rows=rows,
                           header=header)

    return make
