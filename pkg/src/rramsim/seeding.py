"""Deterministic random streams, independent of worker count.

Every consumer of randomness derives its generator from the experiment
seed plus a registered domain integer plus a batch index, through
``SeedSequence((seed, domain, batch))``.  Trials are processed in fixed
batches of :data:`BATCH_SIZE`; parallel workers claim whole batches and
results are reassembled in batch order, so output files are byte-for-byte
identical whether an experiment runs on one worker or many.

Domain integers are frozen; add new ones at the end, never renumber.
"""

from __future__ import annotations

import numpy as np

BATCH_SIZE = 512

DOMAIN_RELAXATION = 1
DOMAIN_BEC_ITERATIONS = 2
DOMAIN_BEC_TIME = 3
DOMAIN_RETENTION = 4
DOMAIN_SCOUTING_TRIALS = 5
DOMAIN_SCOUTING_CALIBRATION = 6
DOMAIN_ENDURANCE = 7
DOMAIN_CURRENT_HISTOGRAM = 8
DOMAIN_ADDER_TRIALS = 9
DOMAIN_ADDER_CALIBRATION = 10
DOMAIN_CALIBRATE = 11
DOMAIN_ADDER3_TRIALS = 12
DOMAIN_ADDER3_CALIBRATION = 13
DOMAIN_ENDURANCE_CALIBRATION = 14


def rng_for(seed: int, domain: int, *indices: int) -> np.random.Generator:
    """Generator for one (seed, domain, condition..., batch) entropy tuple."""
    return np.random.default_rng(
        np.random.SeedSequence((seed, domain, *indices)))


def batch_count(n_trials: int) -> int:
    """Number of fixed-size batches covering ``n_trials``."""
    if n_trials < 1:
        raise ValueError("need at least one trial")
    return -(-n_trials // BATCH_SIZE)


def batch_bounds(batch_index: int, n_trials: int) -> tuple[int, int]:
    """Half-open trial range [start, stop) owned by one batch."""
    start = batch_index * BATCH_SIZE
    stop = min(start + BATCH_SIZE, n_trials)
    if batch_index < 0 or not start < stop:
        raise ValueError(f"batch {batch_index} is out of range")
    return start, stop
