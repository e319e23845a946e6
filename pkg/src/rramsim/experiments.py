"""Monte Carlo experiment engines behind the ``simcmd`` CLI.

Each experiment kind turns a validated :class:`~rramsim.config.ExperimentSpec`
into one CSV table plus one JSON summary.  Work is cut into fixed batches
(:data:`~rramsim.seeding.BATCH_SIZE` trials); every batch owns a private
random stream derived from ``(seed, domain, condition, batch)``, and batch
results are reassembled in a fixed order, so output bytes do not depend on
the worker count.

Within a batch the draw order is part of the reproducibility contract and
is documented per engine below; changing it is a breaking change.

Reads model one sensing event per trial: every selected cell contributes
its noiseless drifted conductance times the read voltage plus one fresh
noise draw, and contributions are summed per trial.  Read age is counted
from the moment a strategy finishes: for ``settled`` that is the last
verify (``settle_time`` after the last SET), for the other strategies the
last SET itself.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .adder import (
    AdderTrial,
    SumDecoder,
    calibrate_sum_decoder,
    error_report,
    max_sum,
)
from .config import ExperimentSpec, ModelConfig, RunConfig, parse_experiment
from .logic import (
    NAND,
    NOR,
    OPS,
    XOR,
    ReferenceSet,
    calibrate_references,
    classify_batch,
)
from .output import fraction_summary, write_csv_atomic, write_json_atomic
from .programming import (
    EXACT,
    IMMEDIATE,
    RAW,
    SETTLED,
    PopulationOutcome,
    TargetLevel,
    exact_population,
    program_population,
    raw_reset_population,
    raw_set_population,
)
from .seeding import (
    BATCH_SIZE,
    DOMAIN_ADDER3_CALIBRATION,
    DOMAIN_ADDER3_TRIALS,
    DOMAIN_ADDER_CALIBRATION,
    DOMAIN_ADDER_TRIALS,
    DOMAIN_BEC_ITERATIONS,
    DOMAIN_BEC_TIME,
    DOMAIN_CALIBRATE,
    DOMAIN_CURRENT_HISTOGRAM,
    DOMAIN_ENDURANCE,
    DOMAIN_ENDURANCE_CALIBRATION,
    DOMAIN_RELAXATION,
    DOMAIN_RETENTION,
    DOMAIN_SCOUTING_CALIBRATION,
    DOMAIN_SCOUTING_TRIALS,
    batch_count,
    rng_for,
)

CSV_HEADERS: dict[str, tuple[str, ...]] = {
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


@dataclass(frozen=True)
class ExperimentResult:
    kind: str
    header: tuple[str, ...]
    rows: list[tuple]
    summary: dict


# ---- shared primitives ------------------------------------------------


def _program_level(size: int, strategy: str, settle_time: float,
                   level: TargetLevel, model: ModelConfig,
                   rng: np.random.Generator,
                   initial_cycles: int = 0) -> PopulationOutcome:
    """Program ``size`` independent cells toward ``level`` per strategy."""
    if strategy == RAW:
        return raw_set_population(size, model.params, rng,
                                  initial_cycles=initial_cycles)
    if strategy == IMMEDIATE:
        return program_population(size, level, model.params, rng,
                                  settle_time=0.0, max_iter=model.max_iter,
                                  initial_cycles=initial_cycles)
    if strategy == SETTLED:
        return program_population(size, level, model.params, rng,
                                  settle_time=settle_time,
                                  max_iter=model.max_iter,
                                  initial_cycles=initial_cycles)
    if strategy == EXACT:
        return exact_population(size, level, initial_cycles=initial_cycles)
    raise ValueError(f"unknown strategy {strategy!r}")


def _read_age(strategy: str, settle_time: float, t_read: float) -> float:
    """Cell age at read time, counted from the last SET.

    ``t_read`` is measured from the end of programming; the settled
    strategy ends one settling wait after its last SET.
    """
    return t_read + (settle_time if strategy == SETTLED else 0.0)


def _cell_currents(pop: PopulationOutcome, model: ModelConfig, age: float,
                   rng: np.random.Generator) -> np.ndarray:
    """Per-cell read currents (uA) at ``age``: Ohm's law + one noise draw each."""
    g = pop.conductance_at_age(model.params, age)
    noise = rng.normal(0.0, model.params.read_noise_sigma, g.size)
    return g * model.params.v_read + noise


def _per_class_counts(trials: int, classes: int) -> np.ndarray:
    """Split ``trials`` as evenly as possible over ``classes`` (first get +1)."""
    base, extra = divmod(trials, classes)
    counts = np.full(classes, base, dtype=np.int64)
    counts[:extra] += 1
    return counts


def _precycle(decade: int) -> int:
    """Initial cycle count so the first loop pulse is pulse number 10**decade.

    Decade 0 therefore starts from zero accumulated cycles and is exactly
    the uncycled experiment.
    """
    return 10 ** decade - 1


def _batches(n_trials: int) -> list[tuple[int, int, int]]:
    """(batch_index, start, stop) triples covering ``n_trials``."""
    out = []
    for b in range(batch_count(n_trials)):
        start = b * BATCH_SIZE
        out.append((b, start, min(start + BATCH_SIZE, n_trials)))
    return out


def _execute(tasks: list[tuple], workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks))


def _run_task(task: tuple):
    return _TASK_FNS[task[0]](*task[1:])


# ---- relaxation -------------------------------------------------------
# Conditions: (strategy, settle_time) pairs -- one per non-settled strategy,
# one per settle_times entry for settled.  Batch draw order: the programming
# population's own draws.  Rows: one per (read time, cell).


def _relaxation_conditions(options: dict) -> list[tuple[str, float]]:
    conds = []
    for strategy in options["strategies"]:
        if strategy == SETTLED:
            conds.extend((strategy, st) for st in options["settle_times"])
        else:
            conds.append((strategy, 0.0))
    return conds


def _relaxation_task(model: ModelConfig, seed: int, cond_idx: int,
                     batch: int, start: int, stop: int, strategy: str,
                     settle_time: float, level_index: int,
                     read_times: list[float]):
    rng = rng_for(seed, DOMAIN_RELAXATION, cond_idx, batch)
    level = model.scheme.levels[level_index]
    pop = _program_level(stop - start, strategy, settle_time, level, model,
                         rng)
    rows: list[tuple] = []
    errors = []
    for t in read_times:
        g = pop.conductance_at_age(model.params,
                                   _read_age(strategy, settle_time, t))
        oow = ~level.contains(g) | ~pop.converged
        errors.append(int(oow.sum()))
        rows.extend(
            (strategy, settle_time, t, start + i, float(g[i]), int(oow[i]))
            for i in range(stop - start))
    return rows, errors


def _run_relaxation(spec: ExperimentSpec, model: ModelConfig, seed: int,
                    workers: int) -> ExperimentResult:
    o = spec.options
    conds = _relaxation_conditions(o)
    tasks = [("relaxation", model, seed, ci, b, start, stop, strategy,
              settle, o["level_index"], o["read_times"])
             for ci, (strategy, settle) in enumerate(conds)
             for b, start, stop in _batches(o["trials"])]
    results = _execute(tasks, workers)

    rows: list[tuple] = []
    per_cond_errors = np.zeros((len(conds), len(o["read_times"])),
                               dtype=np.int64)
    for task, (task_rows, errors) in zip(tasks, results):
        rows.extend(task_rows)
        per_cond_errors[task[3]] += np.asarray(errors)

    conditions = []
    for ci, (strategy, settle) in enumerate(conds):
        points = [
            {"t_read": t,
             "out_of_window": fraction_summary(int(per_cond_errors[ci, j]),
                                               o["trials"])}
            for j, t in enumerate(o["read_times"])
        ]
        conditions.append({"strategy": strategy, "settle_time": settle,
                           "level_index": o["level_index"],
                           "points": points})
    return ExperimentResult("relaxation", CSV_HEADERS["relaxation"], rows,
                            {"conditions": conditions})


# ---- bec_iterations ---------------------------------------------------
# Conditions: one per strategy.  Rows: one per programmed cell.


def _bec_iterations_task(model: ModelConfig, seed: int, cond_idx: int,
                         batch: int, start: int, stop: int, strategy: str,
                         level_index: int):
    rng = rng_for(seed, DOMAIN_BEC_ITERATIONS, cond_idx, batch)
    level = model.scheme.levels[level_index]
    pop = _program_level(stop - start, strategy, model.settle_time, level,
                         model, rng)
    rows = [(strategy, start + i, int(pop.iterations[i]),
             int(pop.converged[i])) for i in range(stop - start)]
    return rows, pop.iterations.copy(), int(pop.converged.sum())


def _run_bec_iterations(spec: ExperimentSpec, model: ModelConfig, seed: int,
                        workers: int) -> ExperimentResult:
    o = spec.options
    conds = list(o["strategies"])
    tasks = [("bec_iterations", model, seed, ci, b, start, stop, strategy,
              o["level_index"])
             for ci, strategy in enumerate(conds)
             for b, start, stop in _batches(o["trials"])]
    results = _execute(tasks, workers)

    rows: list[tuple] = []
    iters: dict[int, list[np.ndarray]] = {ci: [] for ci in range(len(conds))}
    converged = np.zeros(len(conds), dtype=np.int64)
    for task, (task_rows, task_iters, task_conv) in zip(tasks, results):
        rows.extend(task_rows)
        iters[task[3]].append(task_iters)
        converged[task[3]] += task_conv

    conditions = []
    for ci, strategy in enumerate(conds):
        it = np.concatenate(iters[ci])
        conditions.append({
            "strategy": strategy,
            "trials": o["trials"],
            "converged": fraction_summary(int(converged[ci]), o["trials"]),
            "iterations": {
                "median": float(np.median(it)),
                "mean": float(it.mean()),
                "p95": float(np.percentile(it, 95)),
                "max": int(it.max()),
            },
        })
    return ExperimentResult("bec_iterations", CSV_HEADERS["bec_iterations"],
                            rows, {"conditions": conditions})


# ---- bec_time / retention --------------------------------------------
# Conditions: one per strategy (settled uses the model settle_time).  The
# CSV is aggregated: one row per (strategy, read time).


def _bec_time_task(domain: int, model: ModelConfig, seed: int, cond_idx: int,
                   batch: int, start: int, stop: int, strategy: str,
                   level_index: int, read_times: list[float]):
    rng = rng_for(seed, domain, cond_idx, batch)
    level = model.scheme.levels[level_index]
    pop = _program_level(stop - start, strategy, model.settle_time, level,
                         model, rng)
    errors = []
    for t in read_times:
        g = pop.conductance_at_age(
            model.params, _read_age(strategy, model.settle_time, t))
        oow = ~level.contains(g) | ~pop.converged
        errors.append(int(oow.sum()))
    return errors


def _run_bec_like(kind: str, domain: int, spec: ExperimentSpec,
                  model: ModelConfig, seed: int,
                  workers: int) -> ExperimentResult:
    o = spec.options
    conds = list(o["strategies"])
    tasks = [("bec_time", domain, model, seed, ci, b, start, stop, strategy,
              o["level_index"], o["read_times"])
             for ci, strategy in enumerate(conds)
             for b, start, stop in _batches(o["trials"])]
    results = _execute(tasks, workers)

    errors = np.zeros((len(conds), len(o["read_times"])), dtype=np.int64)
    for task, task_errors in zip(tasks, results):
        errors[task[4]] += np.asarray(task_errors)

    rows = []
    conditions = []
    for ci, strategy in enumerate(conds):
        points = []
        for j, t in enumerate(o["read_times"]):
            count = int(errors[ci, j])
            rows.append((strategy, t, o["trials"], count,
                         count / o["trials"]))
            points.append({"t_read": t,
                           "bec": fraction_summary(count, o["trials"])})
        conditions.append({"strategy": strategy, "points": points})
    return ExperimentResult(kind, CSV_HEADERS[kind], rows,
                            {"conditions": conditions})


# ---- scouting: calibration and trial engine ---------------------------
# A trial programs k cells to the binary-1 window and n-k cells to the off
# state, senses all n in one summed read, and classifies that current for
# all three gates at once.  Batch draw order: (1) pattern draws when
# sampling is "pattern", (2) the logic-1 population, (3) the off
# population, (4) logic-1 read noise, (5) off read noise.


def _sum_current_samples(n: int, model: ModelConfig, strategy: str,
                         t_read: float, initial_cycles: int,
                         rng: np.random.Generator,
                         k_of_sample: np.ndarray) -> np.ndarray:
    """Summed read currents for samples whose 1-counts are ``k_of_sample``.

    Non-converged cells are not special-cased: each sample's current is
    whatever its cells actually conduct.
    """
    level = model.binary_level()
    age = _read_age(strategy, model.settle_time, t_read)
    m = k_of_sample.size

    lrs = _program_level(int(k_of_sample.sum()), strategy, model.settle_time,
                         level, model, rng, initial_cycles=initial_cycles)
    hrs = raw_reset_population(int((n - k_of_sample).sum()), model.params,
                               rng, initial_cycles=initial_cycles)
    i_lrs = _cell_currents(lrs, model, age, rng)
    i_hrs = _cell_currents(hrs, model, age, rng)

    sample_of_lrs = np.repeat(np.arange(m), k_of_sample)
    sample_of_hrs = np.repeat(np.arange(m), n - k_of_sample)
    return (np.bincount(sample_of_lrs, weights=i_lrs, minlength=m)
            + np.bincount(sample_of_hrs, weights=i_hrs, minlength=m))


def _calibrate_refs(model: ModelConfig, seed: int, domain: int,
                    cond_idx: int, n: int, strategy: str, t_read: float,
                    decade: int, samples: int) -> ReferenceSet:
    """References for one (n, strategy, decade) condition.

    Training populations are freshly programmed with the same strategy and
    cycling state as the condition under test, ``samples`` sums per
    1-count class, taken in ascending k order from one private stream.
    """
    rng = rng_for(seed, domain, cond_idx)
    initial = _precycle(decade)
    samples_by_k = {}
    for k in range(n + 1):
        k_of_sample = np.full(samples, k, dtype=np.int64)
        samples_by_k[k] = _sum_current_samples(
            n, model, strategy, t_read, initial, rng, k_of_sample)
    return calibrate_references(samples_by_k, n)


def _scouting_task(domain: int, model: ModelConfig, seed: int, cond_idx: int,
                   batch: int, start: int, stop: int, n: int, strategy: str,
                   decade: int, t_read: float, refs: ReferenceSet,
                   k_slice: np.ndarray | None, sampling: str):
    rng = rng_for(seed, domain, cond_idx, batch)
    m = stop - start
    if sampling == "pattern":
        k = rng.binomial(n, 0.5, size=m).astype(np.int64)
    else:
        k = k_slice
    i_total = _sum_current_samples(n, model, strategy, t_read,
                                   _precycle(decade), rng, k)

    preds = {op: classify_batch(i_total, op, refs) for op in OPS}
    truths = {
        NAND: (k != n).astype(np.int64),
        NOR: (k == 0).astype(np.int64),
        XOR: ((k > 0) & (k < n)).astype(np.int64),
    }
    rows: list[tuple] = []
    for i in range(m):
        for op in OPS:
            p, tr = int(preds[op][i]), int(truths[op][i])
            rows.append((op, n, strategy, int(k[i]), decade, t_read,
                         float(i_total[i]), p, tr, int(p == tr)))
    correct = {op: int((preds[op] == truths[op]).sum()) for op in OPS}
    per_k_correct = np.stack([
        np.bincount(k, weights=(preds[op] == truths[op]), minlength=n + 1)
        for op in OPS]).astype(np.int64)
    per_k_total = np.bincount(k, minlength=n + 1).astype(np.int64)
    return rows, correct, per_k_correct, per_k_total


def _run_scouting_like(kind: str, trial_domain: int, cal_domain: int,
                       spec: ExperimentSpec, model: ModelConfig, seed: int,
                       workers: int) -> ExperimentResult:
    o = spec.options
    decades = o.get("decades", [0])
    sampling = o.get("sampling", "per_k")
    conds = [(n, strategy, decade)
             for n in o["n_operands"]
             for strategy in o["strategies"]
             for decade in decades]

    refs = [_calibrate_refs(model, seed, cal_domain, ci, n, strategy,
                            o["t_read"], decade, o["calibration_samples"])
            for ci, (n, strategy, decade) in enumerate(conds)]

    tasks = []
    for ci, (n, strategy, decade) in enumerate(conds):
        if sampling == "per_k":
            counts = _per_class_counts(o["trials"], n + 1)
            k_all = np.repeat(np.arange(n + 1, dtype=np.int64), counts)
        else:
            k_all = None
        for b, start, stop in _batches(o["trials"]):
            k_slice = None if k_all is None else k_all[start:stop]
            tasks.append(("scouting", trial_domain, model, seed, ci, b,
                          start, stop, n, strategy, decade, o["t_read"],
                          refs[ci], k_slice, sampling))
    results = _execute(tasks, workers)

    rows: list[tuple] = []
    correct = [dict.fromkeys(OPS, 0) for _ in conds]
    per_k_correct = [np.zeros((3, n + 1), dtype=np.int64)
                     for n, _, _ in conds]
    per_k_total = [np.zeros(n + 1, dtype=np.int64) for n, _, _ in conds]
    for task, (task_rows, task_correct, task_pkc, task_pkt) in zip(tasks,
                                                                   results):
        ci = task[4]
        rows.extend(task_rows)
        for op in OPS:
            correct[ci][op] += task_correct[op]
        per_k_correct[ci] += task_pkc
        per_k_total[ci] += task_pkt

    conditions = []
    for ci, (n, strategy, decade) in enumerate(conds):
        entry = {
            "n": n,
            "strategy": strategy,
            "decade": decade,
            "t_read": o["t_read"],
            "sampling": sampling,
            "references": {"ref_low": refs[ci].ref_low,
                           "ref_high": refs[ci].ref_high},
            "ops": {op: fraction_summary(correct[ci][op], o["trials"])
                    for op in OPS},
        }
        if sampling == "per_k":
            pk = per_k_correct[ci] / per_k_total[ci]
            entry["per_k"] = {op: [float(pk[oi, k]) for k in range(n + 1)]
                              for oi, op in enumerate(OPS)}
        conditions.append(entry)
    return ExperimentResult(kind, CSV_HEADERS[kind], rows,
                            {"conditions": conditions})


# ---- current_histogram ------------------------------------------------


def _histogram_task(model: ModelConfig, seed: int, cond_idx: int, batch: int,
                    start: int, stop: int, n: int, strategy: str,
                    t_read: float, k_slice: np.ndarray):
    rng = rng_for(seed, DOMAIN_CURRENT_HISTOGRAM, cond_idx, batch)
    i_total = _sum_current_samples(n, model, strategy, t_read, 0, rng,
                                   k_slice)
    rows = [(n, strategy, int(k_slice[i]), t_read, float(i_total[i]))
            for i in range(stop - start)]
    return rows, k_slice, i_total


def _run_current_histogram(spec: ExperimentSpec, model: ModelConfig,
                           seed: int, workers: int) -> ExperimentResult:
    o = spec.options
    conds = [(n, strategy) for n in o["n_operands"]
             for strategy in o["strategies"]]
    tasks = []
    for ci, (n, strategy) in enumerate(conds):
        counts = _per_class_counts(o["trials"], n + 1)
        k_all = np.repeat(np.arange(n + 1, dtype=np.int64), counts)
        for b, start, stop in _batches(o["trials"]):
            tasks.append(("histogram", model, seed, ci, b, start, stop, n,
                          strategy, o["t_read"], k_all[start:stop]))
    results = _execute(tasks, workers)

    rows: list[tuple] = []
    gathered: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {
        ci: [] for ci in range(len(conds))}
    for task, (task_rows, k_arr, i_arr) in zip(tasks, results):
        rows.extend(task_rows)
        gathered[task[3]].append((k_arr, i_arr))

    conditions = []
    for ci, (n, strategy) in enumerate(conds):
        k = np.concatenate([a for a, _ in gathered[ci]])
        i = np.concatenate([b for _, b in gathered[ci]])
        per_k = []
        for kk in range(n + 1):
            sel = i[k == kk]
            per_k.append({"k": kk, "count": int(sel.size),
                          "mean_i": float(sel.mean()),
                          "std_i": float(sel.std(ddof=1))
                          if sel.size > 1 else 0.0})
        conditions.append({"n": n, "strategy": strategy,
                           "t_read": o["t_read"], "per_k": per_k})
    return ExperimentResult("current_histogram",
                            CSV_HEADERS["current_histogram"], rows,
                            {"conditions": conditions})


# ---- adder ------------------------------------------------------------
# A trial programs one cell per operand to the level encoding its value,
# senses all cells in one summed read, and decodes the sum with the
# condition's calibrated thresholds.  Batch draw order: (1) operand draws
# when sampling is "uniform", (2) per-level populations in ascending level
# order, (3) one read-noise vector over all cells.


def _adder_currents(operands: np.ndarray, model: ModelConfig, strategy: str,
                    t_read: float, rng: np.random.Generator
                    ) -> tuple[np.ndarray, np.ndarray]:
    """Summed currents and per-trial convergence for an operand matrix."""
    m, n = operands.shape
    age = _read_age(strategy, model.settle_time, t_read)
    flat = operands.reshape(-1)
    g = np.empty(flat.size)
    conv = np.ones(flat.size, dtype=bool)
    for value in range(model.scheme.n_levels):
        idx = np.flatnonzero(flat == value)
        pop = _program_level(idx.size, strategy, model.settle_time,
                             model.scheme.levels[value], model, rng)
        g[idx] = pop.conductance_at_age(model.params, age)
        conv[idx] = pop.converged
    noise = rng.normal(0.0, model.params.read_noise_sigma, flat.size)
    currents = g * model.params.v_read + noise
    i_total = currents.reshape(m, n).sum(axis=1)
    converged = conv.reshape(m, n).all(axis=1)
    return i_total, converged


def _calibrate_decoder(model: ModelConfig, seed: int, domain: int,
                       cond_idx: int, n_inputs: int, strategy: str,
                       t_read: float, samples: int) -> SumDecoder:
    """Thresholds for one (strategy, t_read) condition.

    Per sum state, operand tuples are drawn uniformly over the tuples with
    that sum, so training matches the uniform trial mix conditioned on the
    sum.  States are sampled in ascending order from one private stream.
    """
    rng = rng_for(seed, domain, cond_idx)
    n_states = max_sum(n_inputs, model.scheme) + 1
    tuples = np.array(list(itertools.product(range(model.scheme.n_levels),
                                             repeat=n_inputs)))
    samples_by_sum = {}
    for s in range(n_states):
        pool = tuples[tuples.sum(axis=1) == s]
        operands = pool[rng.integers(0, len(pool), size=samples)]
        i_total, _ = _adder_currents(operands, model, strategy, t_read, rng)
        samples_by_sum[s] = i_total
    return calibrate_sum_decoder(samples_by_sum, n_states)


def _adder_task(domain: int, model: ModelConfig, seed: int, cond_idx: int,
                batch: int, start: int, stop: int, n_inputs: int,
                strategy: str, t_read: float, thresholds: tuple,
                operand_sampling: str):
    rng = rng_for(seed, domain, cond_idx, batch)
    m = stop - start
    if operand_sampling == "uniform":
        operands = rng.integers(0, model.scheme.n_levels,
                                size=(m, n_inputs)).astype(np.int64)
    else:
        table = np.array(list(itertools.product(
            range(model.scheme.n_levels), repeat=n_inputs)), dtype=np.int64)
        operands = table[(np.arange(start, stop)) % len(table)]
    i_total, converged = _adder_currents(operands, model, strategy, t_read,
                                         rng)
    decoder = SumDecoder(thresholds)
    decoded = decoder.decode_batch(i_total)
    true = operands.sum(axis=1)

    rows = [(n_inputs, strategy,
             ";".join(str(v) for v in operands[i]), t_read,
             float(i_total[i]), int(true[i]), int(decoded[i]))
            for i in range(m)]
    return rows, true, decoded, converged


def _run_adder_like(kind: str, n_inputs: int, trial_domain: int,
                    cal_domain: int, spec: ExperimentSpec,
                    model: ModelConfig, seed: int,
                    workers: int) -> ExperimentResult:
    o = spec.options
    conds = [(strategy, t_read) for strategy in o["strategies"]
             for t_read in o["read_times"]]
    decoders = [
        _calibrate_decoder(model, seed, cal_domain, ci, n_inputs, strategy,
                           t_read, o["calibration_samples"])
        for ci, (strategy, t_read) in enumerate(conds)
    ]
    tasks = [("adder", trial_domain, model, seed, ci, b, start, stop,
              n_inputs, strategy, t_read, decoders[ci].thresholds,
              o["operand_sampling"])
             for ci, (strategy, t_read) in enumerate(conds)
             for b, start, stop in _batches(o["trials"])]
    results = _execute(tasks, workers)

    rows: list[tuple] = []
    gathered: dict[int, list] = {ci: [] for ci in range(len(conds))}
    for task, (task_rows, true, decoded, converged) in zip(tasks, results):
        rows.extend(task_rows)
        gathered[task[4]].append((true, decoded, converged))

    n_states = max_sum(n_inputs, model.scheme) + 1
    conditions = []
    for ci, (strategy, t_read) in enumerate(conds):
        true = np.concatenate([g[0] for g in gathered[ci]])
        decoded = np.concatenate([g[1] for g in gathered[ci]])
        converged = np.concatenate([g[2] for g in gathered[ci]])
        trials = [AdderTrial(operands=(), true_sum=int(t), i_total=0.0,
                             decoded=int(d), converged=bool(c))
                  for t, d, c in zip(true, decoded, converged)]
        report = error_report(trials, n_states)
        errors = int((true != decoded).sum())
        conditions.append({
            "n_inputs": n_inputs,
            "strategy": strategy,
            "t_read": t_read,
            "thresholds": list(decoders[ci].thresholds),
            "programming_failures": int((~converged).sum()),
            "report": {
                "n_trials": report.n_trials,
                "overall_error": report.overall_error,
                "overall_ci95": list(
                    fraction_summary(errors, len(trials))["ci95"]),
                "non_adjacent_error": report.non_adjacent_error,
                "mean_abs_error": report.mean_abs_error,
                "adjacent_pairs": {
                    f"{a}-{b}": {"rate": report.pair_rates[(a, b)],
                                 "count": report.pair_counts[(a, b)]}
                    for a, b in report.pair_rates
                },
            },
        })
    return ExperimentResult(kind, CSV_HEADERS[kind], rows,
                            {"conditions": conditions})


# ---- calibrate --------------------------------------------------------


def _run_calibrate(spec: ExperimentSpec, model: ModelConfig, seed: int,
                   workers: int) -> ExperimentResult:
    o = spec.options
    conds = [(n, strategy) for n in o["n_operands"]
             for strategy in o["strategies"]]
    rows = []
    conditions = []
    for ci, (n, strategy) in enumerate(conds):
        refs = _calibrate_refs(model, seed, DOMAIN_CALIBRATE, ci, n,
                               strategy, o["t_read"], 0,
                               o["calibration_samples"])
        rows.append(("ref_low", n, strategy, o["t_read"], refs.ref_low))
        rows.append(("ref_high", n, strategy, o["t_read"], refs.ref_high))
        conditions.append({"n": n, "strategy": strategy,
                           "t_read": o["t_read"],
                           "ref_low": refs.ref_low,
                           "ref_high": refs.ref_high})
    return ExperimentResult("calibrate", CSV_HEADERS["calibrate"], rows,
                            {"conditions": conditions})


# ---- dispatch and file output -----------------------------------------

_TASK_FNS = {
    "relaxation": _relaxation_task,
    "bec_iterations": _bec_iterations_task,
    "bec_time": _bec_time_task,
    "scouting": _scouting_task,
    "histogram": _histogram_task,
    "adder": _adder_task,
}


def run_experiment(spec: ExperimentSpec, model: ModelConfig, seed: int,
                   workers: int = 1) -> ExperimentResult:
    """Run one experiment kind and return its table and summary."""
    kind = spec.kind
    if kind == "relaxation":
        return _run_relaxation(spec, model, seed, workers)
    if kind == "bec_iterations":
        return _run_bec_iterations(spec, model, seed, workers)
    if kind == "bec_time":
        return _run_bec_like("bec_time", DOMAIN_BEC_TIME, spec, model, seed,
                             workers)
    if kind == "retention":
        return _run_bec_like("retention", DOMAIN_RETENTION, spec, model,
                             seed, workers)
    if kind == "scouting_success":
        return _run_scouting_like("scouting_success", DOMAIN_SCOUTING_TRIALS,
                                  DOMAIN_SCOUTING_CALIBRATION, spec, model,
                                  seed, workers)
    if kind == "endurance":
        return _run_scouting_like("endurance", DOMAIN_ENDURANCE,
                                  DOMAIN_ENDURANCE_CALIBRATION, spec, model,
                                  seed, workers)
    if kind == "current_histogram":
        return _run_current_histogram(spec, model, seed, workers)
    if kind == "adder":
        return _run_adder_like("adder", 2, DOMAIN_ADDER_TRIALS,
                               DOMAIN_ADDER_CALIBRATION, spec, model, seed,
                               workers)
    if kind == "adder3":
        return _run_adder_like("adder3", 3, DOMAIN_ADDER3_TRIALS,
                               DOMAIN_ADDER3_CALIBRATION, spec, model, seed,
                               workers)
    if kind == "calibrate":
        return _run_calibrate(spec, model, seed, workers)
    raise ValueError(f"unknown experiment kind {kind!r}")


def run_config(config: RunConfig, out_dir: str | Path,
               workers: int = 1) -> list[Path]:
    """Run every experiment in ``config``; returns the files written."""
    out_dir = Path(out_dir)
    written: list[Path] = []
    for spec in config.experiments:
        result = run_experiment(spec, config.model, config.seed, workers)
        csv_path = out_dir / f"{spec.kind}.csv"
        json_path = out_dir / f"{spec.kind}.summary.json"
        write_csv_atomic(csv_path, result.header, result.rows)
        write_json_atomic(json_path, {
            "kind": spec.kind,
            "seed": config.seed,
            "options": spec.options,
            "results": result.summary,
        })
        written.extend([csv_path, json_path])
    return written


# ---- library conveniences --------------------------------------------


def scouting_success_rate(model: ModelConfig, seed: int, n_operands: int,
                          strategy: str, trials: int, *, t_read: float = 1.0,
                          sampling: str = "per_k",
                          calibration_samples: int = 1000,
                          workers: int = 1) -> dict[str, float]:
    """Success fraction per gate for one (n, strategy) point."""
    spec = parse_experiment(
        {"kind": "scouting_success", "trials": trials,
         "n_operands": [n_operands], "strategies": [strategy],
         "t_read": t_read, "sampling": sampling,
         "calibration_samples": calibration_samples},
        model, "experiments[0]")
    result = run_experiment(spec, model, seed, workers)
    ops = result.summary["conditions"][0]["ops"]
    return {op: ops[op]["fraction"] for op in OPS}


def endurance_sweep(model: ModelConfig, seed: int, op: str, n_operands: int,
                    decades: Sequence[int], *, strategy: str = "settled",
                    trials: int = 2048, t_read: float = 1.0,
                    calibration_samples: int = 1000,
                    workers: int = 1) -> list[tuple[int, float]]:
    """(decade, success fraction) for one gate over an endurance sweep."""
    spec = parse_experiment(
        {"kind": "endurance", "trials": trials, "n_operands": [n_operands],
         "strategies": [strategy], "decades": list(decades),
         "t_read": t_read, "calibration_samples": calibration_samples},
        model, "experiments[0]")
    result = run_experiment(spec, model, seed, workers)
    out = []
    for cond in result.summary["conditions"]:
        out.append((cond["decade"], cond["ops"][op]["fraction"]))
    return out
