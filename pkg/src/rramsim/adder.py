"""Multilevel in-memory addition: encode values as levels, decode sum currents.

Each operand cell stores a small integer (0..levels-1) as one window of a
multilevel conductance scheme.  Reading several operand cells in parallel
sums their currents, and because the level centers are evenly spaced that
sum is, up to noise and relaxation, an affine function of the arithmetic
sum of the stored values.  A bank of current thresholds, one per adjacent
pair of sum states, turns the measured sum current back into a digit.

Thresholds are placed the same way as the logic references: per adjacent
sum-state pair, minimize the count of misclassified calibration samples
(see :func:`rramsim.logic.minimal_error_threshold`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .logic import CalibrationError, minimal_error_threshold
from .programming import LevelScheme, TargetLevel


def encode(value: int, scheme: LevelScheme) -> TargetLevel:
    """Target window storing ``value`` (0..levels-1) in one cell."""
    if not 0 <= value < len(scheme.levels):
        raise ValueError(
            f"value {value} not encodable in {len(scheme.levels)} levels")
    return scheme.levels[value]


def max_sum(n_operands: int, scheme: LevelScheme) -> int:
    """Largest decodable sum for ``n_operands`` cells under ``scheme``."""
    if n_operands < 2:
        raise ValueError("need at least two operands")
    return n_operands * (len(scheme.levels) - 1)


@dataclass(frozen=True)
class SumDecoder:
    """Ascending current thresholds (uA) separating adjacent sum states."""

    thresholds: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.thresholds) == 0:
            raise ValueError("decoder needs at least one threshold")
        diffs = np.diff(self.thresholds)
        if np.any(diffs <= 0.0):
            raise ValueError("thresholds must be strictly increasing")

    @property
    def n_states(self) -> int:
        return len(self.thresholds) + 1

    def decode(self, current: float) -> int:
        """Sum state whose current band contains the measured current."""
        return int(np.searchsorted(self.thresholds, current, side="right"))

    def decode_batch(self, currents: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.thresholds,
                               np.asarray(currents), side="right")


def calibrate_sum_decoder(samples_by_sum: Mapping[int, Sequence[float]],
                          n_states: int) -> SumDecoder:
    """Place one threshold per adjacent sum-state pair from measured currents.

    ``samples_by_sum`` maps each sum state 0..n_states-1 to an array of
    summed read currents observed for operands adding up to that state.
    Every state must be present.
    """
    if n_states < 2:
        raise ValueError("need at least two sum states")
    missing = [s for s in range(n_states)
               if s not in samples_by_sum or len(samples_by_sum[s]) == 0]
    if missing:
        raise ValueError(f"no samples for sum states {missing}")

    thresholds = [
        minimal_error_threshold(samples_by_sum[s], samples_by_sum[s + 1])
        for s in range(n_states - 1)
    ]
    if np.any(np.diff(thresholds) <= 0.0):
        raise CalibrationError(
            "adjacent-state thresholds are not increasing; "
            "the sum-current bands overlap too much to decode")
    return SumDecoder(thresholds=tuple(float(t) for t in thresholds))


# ---- accuracy summary -------------------------------------------------


@dataclass(frozen=True)
class AdderTrial:
    """One programmed-and-read addition."""

    operands: tuple[int, ...]
    true_sum: int
    i_total: float
    decoded: int
    converged: bool


@dataclass
class AdderErrorReport:
    """Decode accuracy split by how far the decoded digit landed."""

    n_trials: int
    overall_error: float
    non_adjacent_error: float
    mean_abs_error: float
    pair_rates: dict[tuple[int, int], float]
    pair_counts: dict[tuple[int, int], int]


def error_report(trials: Sequence[AdderTrial], n_states: int) -> AdderErrorReport:
    """Summarize decode errors, resolved per adjacent sum-state pair.

    The rate for pair (s, s+1) counts trials whose true sum is one member
    of the pair but which decoded to the other, over all trials whose
    true sum lies in the pair.
    """
    if not trials:
        raise ValueError("no trials to report on")
    true = np.array([t.true_sum for t in trials])
    decoded = np.array([t.decoded for t in trials])
    dist = np.abs(decoded - true)

    pair_rates: dict[tuple[int, int], float] = {}
    pair_counts: dict[tuple[int, int], int] = {}
    for s in range(n_states - 1):
        in_pair = (true == s) | (true == s + 1)
        count = int(in_pair.sum())
        swapped = in_pair & (decoded == (2 * s + 1) - true)
        pair_counts[(s, s + 1)] = count
        pair_rates[(s, s + 1)] = (float(swapped.sum()) / count if count else
                                  float("nan"))

    return AdderErrorReport(
        n_trials=len(trials),
        overall_error=float((dist > 0).mean()),
        non_adjacent_error=float((dist >= 2).mean()),
        mean_abs_error=float(dist.mean()),
        pair_rates=pair_rates,
        pair_counts=pair_counts,
    )
