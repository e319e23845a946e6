"""Summed-current in-memory logic: truth tables, references, classification.

Operands are stored as binary states along one word line (logic 1 = a cell
programmed into the low-resistance window, logic 0 = the off state).  A
parallel read senses the sum of the selected bit-line currents; the gate
output is decided by comparing that sum against one or two current
references.

Supported gates, generalized to n operands by the count k of 1-inputs:

* ``nand`` -- 0 only when every operand is 1 (k == n)
* ``nor``  -- 1 only when every operand is 0 (k == 0)
* ``xor``  -- 1 when the operands are mixed (0 < k < n)

For two operands ``xor`` is ordinary exclusive-or.  For more operands it
is *not* the parity function: it answers "are the inputs neither all 0
nor all 1".

References are placed by a distribution-free scan: pool measured sum
currents from the relevant operand counts and pick the threshold that
misclassifies the fewest samples.  ``ref_low`` separates k == 0 from
k >= 1; ``ref_high`` separates k <= n-1 from k == n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

NAND = "nand"
NOR = "nor"
XOR = "xor"
OPS = (NAND, NOR, XOR)


class CalibrationError(ValueError):
    """The sampled distributions admit no usable reference ordering."""


@dataclass(frozen=True)
class ReferenceSet:
    """Current thresholds (uA) shared by all three gates."""

    ref_low: float
    ref_high: float

    def __post_init__(self) -> None:
        if not self.ref_low < self.ref_high:
            raise ValueError("ref_low must be strictly below ref_high")


# ---- truth ------------------------------------------------------------


def truth_from_count(op: str, ones: int, n_operands: int) -> int:
    """Ideal gate output given how many of the n operands are 1."""
    if not 0 <= ones <= n_operands:
        raise ValueError(f"ones={ones} outside 0..{n_operands}")
    if op == NAND:
        return 0 if ones == n_operands else 1
    if op == NOR:
        return 1 if ones == 0 else 0
    if op == XOR:
        return 1 if 0 < ones < n_operands else 0
    raise ValueError(f"unknown op {op!r}")


def truth_value(op: str, bits: Iterable[int]) -> int:
    """Ideal gate output for explicit operand bits."""
    bits = list(bits)
    if not bits:
        raise ValueError("need at least one operand")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("operands must be 0 or 1")
    return truth_from_count(op, sum(bits), len(bits))


# ---- classification ---------------------------------------------------


def classify(current: float, op: str, refs: ReferenceSet) -> int:
    """Gate output decided from one summed read current (uA)."""
    if op == NOR:
        return 1 if current < refs.ref_low else 0
    if op == NAND:
        return 1 if current < refs.ref_high else 0
    if op == XOR:
        return 1 if refs.ref_low <= current < refs.ref_high else 0
    raise ValueError(f"unknown op {op!r}")


def classify_batch(currents: np.ndarray, op: str,
                   refs: ReferenceSet) -> np.ndarray:
    """Vectorized :func:`classify` over an array of sum currents."""
    currents = np.asarray(currents)
    if op == NOR:
        return (currents < refs.ref_low).astype(np.int64)
    if op == NAND:
        return (currents < refs.ref_high).astype(np.int64)
    if op == XOR:
        return ((currents >= refs.ref_low)
                & (currents < refs.ref_high)).astype(np.int64)
    raise ValueError(f"unknown op {op!r}")


# ---- reference placement ---------------------------------------------


def minimal_error_threshold(below: Sequence[float],
                            above: Sequence[float]) -> float:
    """Threshold t minimizing ``#(below >= t) + #(above < t)``.

    Candidate thresholds are the midpoints between adjacent distinct
    pooled sample values, plus one position below the smallest and one
    above the largest sample.  When several contiguous candidate gaps tie
    on the minimal count, the returned t is the midpoint of the longest
    such plateau (the first one, if plateau lengths also tie), which
    centers the threshold inside the widest empty region.
    """
    below = np.sort(np.asarray(below, dtype=float))
    above = np.sort(np.asarray(above, dtype=float))
    if below.size == 0 or above.size == 0:
        raise ValueError("both sample groups must be non-empty")
    pooled = np.unique(np.concatenate([below, above]))
    pad = pooled[-1] - pooled[0] if pooled[-1] > pooled[0] else 1.0
    ext = np.concatenate([[pooled[0] - pad], pooled, [pooled[-1] + pad]])
    mids = (ext[:-1] + ext[1:]) / 2.0
    err = ((below.size - np.searchsorted(below, mids, side="left"))
           + np.searchsorted(above, mids, side="left"))

    is_best = err == err.min()
    run_start = best_start = 0
    best_len = 0
    for i in range(is_best.size + 1):
        if i < is_best.size and is_best[i]:
            continue
        if i - run_start > best_len:
            best_len = i - run_start
            best_start = run_start
        run_start = i + 1
    i0, i1 = best_start, best_start + best_len - 1
    return float((ext[i0] + ext[i1 + 1]) / 2.0)


def calibrate_references(samples_by_count: Mapping[int, Sequence[float]],
                         n_operands: int) -> ReferenceSet:
    """Place both references from measured sum currents.

    ``samples_by_count`` maps the number of 1-operands to an array of
    summed read currents observed for that operand count.  Counts 0, 1,
    n-1 and n must be present; any others are pooled in as well.
    """
    if n_operands < 2:
        raise ValueError("need at least two operands")
    for k in {0, 1, n_operands - 1, n_operands}:
        if k not in samples_by_count or len(samples_by_count[k]) == 0:
            raise ValueError(f"no samples for operand count {k}")

    groups = {k: np.asarray(v, dtype=float)
              for k, v in samples_by_count.items()}
    low = minimal_error_threshold(
        groups[0],
        np.concatenate([g for k, g in groups.items() if k >= 1]))
    high = minimal_error_threshold(
        np.concatenate([g for k, g in groups.items() if k <= n_operands - 1]),
        groups[n_operands])
    if not low < high:
        raise CalibrationError(
            f"references inverted (ref_low={low:.3f} >= ref_high={high:.3f}); "
            "the sampled states are not separable enough")
    return ReferenceSet(ref_low=low, ref_high=high)
