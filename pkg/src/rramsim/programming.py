"""Programming strategies: single pulses and program-and-verify loops.

Four strategies are exposed throughout the package:

* ``raw`` - one plain SET (or RESET for the off state), no verify.
* ``immediate`` - loop of RESET+SET followed by a verify read taken
  immediately, before any relaxation has acted.
* ``settled`` - same loop, but each verify read happens ``settle_time``
  seconds after the SET, so the verify sees the partially relaxed
  conductance.  The simulation clock advances by ``settle_time`` per
  iteration.  With ``settle_time=0`` this is bit-for-bit identical to
  ``immediate``.
* ``exact`` - deterministic oracle write at the window centre (used by the
  noiseless presets, where zero cycle-to-cycle spread would otherwise make
  off-median windows unreachable).

One verify-loop iteration is one RESET+SET endurance cycle (+1 on the
cell's cycle counter).  Verify reads are noiseless on purpose: read noise
models the sense path, not the stored conductance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import (
    G_FLOOR,
    HRS,
    LRS,
    RELAX_SATURATION_S,
    CellState,
    DeviceParams,
    effective_sigma,
    relaxation_fraction,
)

RAW = "raw"
IMMEDIATE = "immediate"
SETTLED = "settled"
EXACT = "exact"
STRATEGIES = (RAW, IMMEDIATE, SETTLED, EXACT)

DEFAULT_MAX_ITER = 100
DEFAULT_SETTLE_TIME = 5.0


@dataclass(frozen=True)
class TargetLevel:
    """Acceptance window for one programmed level."""

    index: int
    g_min: float
    g_max: float

    def __post_init__(self) -> None:
        if not (0.0 < self.g_min < self.g_max):
            raise ValueError("require 0 < g_min < g_max")

    @property
    def center(self) -> float:
        return 0.5 * (self.g_min + self.g_max)

    def contains(self, g) -> bool | np.ndarray:
        return (g >= self.g_min) & (g <= self.g_max)


@dataclass(frozen=True)
class LevelScheme:
    """Evenly spaced multilevel windows, lowest conductance first."""

    levels: tuple[TargetLevel, ...]

    def __post_init__(self) -> None:
        if len(self.levels) < 2:
            raise ValueError("a level scheme needs at least 2 levels")
        for lo, hi in zip(self.levels, self.levels[1:]):
            if lo.g_max >= hi.g_min:
                raise ValueError(
                    f"windows of levels {lo.index} and {hi.index} overlap")

    @property
    def n_levels(self) -> int:
        return len(self.levels)


def make_level_scheme(n_levels: int, g_lo: float, g_hi: float,
                      window_half_width: float) -> LevelScheme:
    """Linearly spaced level centres from g_lo to g_hi with +/- half-width windows.

    Raises ValueError when the spacing does not exceed the window width,
    i.e. when adjacent windows would touch or overlap.
    """
    if n_levels < 2:
        raise ValueError("n_levels must be >= 2")
    if not (0.0 < g_lo < g_hi):
        raise ValueError("require 0 < g_lo < g_hi")
    if window_half_width <= 0.0:
        raise ValueError("window_half_width must be > 0")
    spacing = (g_hi - g_lo) / (n_levels - 1)
    if spacing <= 2.0 * window_half_width:
        raise ValueError(
            f"level spacing {spacing:g} uS must exceed the window width "
            f"{2.0 * window_half_width:g} uS")
    centers = np.linspace(g_lo, g_hi, n_levels)
    levels = tuple(
        TargetLevel(i, c - window_half_width, c + window_half_width)
        for i, c in enumerate(centers))
    return LevelScheme(levels)


@dataclass(frozen=True)
class ProgramOutcome:
    """Result of one program-and-verify run on one cell.

    Non-convergence is reported, never raised; downstream statistics count
    non-converged cells as bit errors.
    """

    converged: bool
    iterations: int
    final_cell: CellState


@dataclass
class PopulationOutcome:
    """Vectorized result of programming ``size`` cells toward one window."""

    g0: np.ndarray           # float, uS
    relax_draw: np.ndarray   # float
    t_program: np.ndarray    # float, s
    cycles: np.ndarray       # int
    iterations: np.ndarray   # int, verify-loop iterations consumed
    converged: np.ndarray    # bool
    state_kind: str = LRS

    @property
    def size(self) -> int:
        return self.g0.size

    def cell(self, i: int) -> CellState:
        return CellState(g0=float(self.g0[i]), relax_draw=float(self.relax_draw[i]),
                         t_program=float(self.t_program[i]),
                         cycles=int(self.cycles[i]), state_kind=self.state_kind)

    def conductance_at(self, params: DeviceParams, t) -> np.ndarray:
        """Vectorized noiseless conductance of the whole population at time t."""
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t_program):
            raise ValueError("read time precedes a program event")
        age = t - self.t_program
        tau = params.relax_tau
        frac = np.minimum(
            np.log1p(age / tau) / np.log1p(RELAX_SATURATION_S / tau), 1.0)
        drift = params.relax_drift_mu + params.relax_sigma_inf * self.relax_draw
        return np.maximum(G_FLOOR, self.g0 + frac * drift)

    def conductance_at_age(self, params: DeviceParams, age: float) -> np.ndarray:
        """Conductance ``age`` seconds after each cell's own last pulse.

        Unlike :meth:`conductance_at` this aligns cells on their individual
        program events, which is the natural axis when a population was
        programmed with per-cell verify loops of different lengths.
        """
        if age < 0.0:
            raise ValueError("age must be >= 0")
        return self.conductance_at(params, self.t_program + age)


def program_population(size: int, level: TargetLevel, params: DeviceParams,
                       rng: np.random.Generator, *, settle_time: float = 0.0,
                       max_iter: int = DEFAULT_MAX_ITER, clock: float = 0.0,
                       initial_cycles: int | np.ndarray = 0) -> PopulationOutcome:
    """Program ``size`` cells toward ``level`` with a RESET+SET verify loop.

    Each iteration draws, for every still-active cell and in this order, the
    HRS conductance deviate, the HRS relaxation deviate, the LRS conductance
    deviate and the LRS relaxation deviate (draws are taken only for active
    cells, so one cell's stream depends on the batch composition; batches are
    fixed units of work - see the seeding notes in the README).  The verify
    compares the noiseless conductance ``settle_time`` seconds after the SET
    against the window.  Cells that never verify in ``max_iter`` iterations
    are reported with ``converged=False`` and left in their last SET state.
    """
    if settle_time < 0.0:
        raise ValueError("settle_time must be >= 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    g0 = np.empty(size)
    relax = np.empty(size)
    t_program = np.zeros(size)
    cycles = np.broadcast_to(np.asarray(initial_cycles, dtype=np.int64),
                             (size,)).copy()
    iterations = np.zeros(size, dtype=np.int64)
    active = np.ones(size, dtype=bool)

    frac = relaxation_fraction(settle_time, params.relax_tau)
    widen = params.endurance_widen_per_decade

    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        m = idx.size
        sig_l = effective_sigma(params.lrs_sigma, cycles[idx], widen)
        # RESET then SET; the intermediate HRS state is never read but its
        # draws are taken to keep the per-cell stream layout uniform.
        rng.standard_normal(m)                                  # HRS g deviate
        rng.standard_normal(m)                                  # HRS relax deviate
        g_new = params.lrs_median_g * np.exp(sig_l * rng.standard_normal(m))
        z_new = rng.standard_normal(m)

        verify = g_new + frac * (params.relax_drift_mu
                                 + params.relax_sigma_inf * z_new)
        ok = (verify >= level.g_min) & (verify <= level.g_max)

        g0[idx] = g_new
        relax[idx] = z_new
        t_program[idx] = clock + (it - 1) * settle_time
        cycles[idx] += 1
        iterations[idx] = it
        active[idx[ok]] = False

    return PopulationOutcome(g0=g0, relax_draw=relax, t_program=t_program,
                             cycles=cycles, iterations=iterations,
                             converged=~active)


def raw_set_population(size: int, params: DeviceParams,
                       rng: np.random.Generator, *, clock: float = 0.0,
                       initial_cycles: int | np.ndarray = 0) -> PopulationOutcome:
    """One plain SET per cell (no verify): the ``raw`` on-state write."""
    cycles = np.broadcast_to(np.asarray(initial_cycles, dtype=np.int64),
                             (size,)).copy()
    sig = effective_sigma(params.lrs_sigma, cycles,
                          params.endurance_widen_per_decade)
    g0 = params.lrs_median_g * np.exp(sig * rng.standard_normal(size))
    relax = rng.standard_normal(size)
    return PopulationOutcome(g0=g0, relax_draw=relax,
                             t_program=np.full(size, clock), cycles=cycles + 1,
                             iterations=np.ones(size, dtype=np.int64),
                             converged=np.ones(size, dtype=bool),
                             state_kind=LRS)


def raw_reset_population(size: int, params: DeviceParams,
                         rng: np.random.Generator, *, clock: float = 0.0,
                         initial_cycles: int | np.ndarray = 0) -> PopulationOutcome:
    """One plain RESET per cell: the off-state write for every strategy."""
    cycles = np.broadcast_to(np.asarray(initial_cycles, dtype=np.int64),
                             (size,)).copy()
    sig = effective_sigma(params.hrs_sigma, cycles,
                          params.endurance_widen_per_decade)
    g0 = params.hrs_median_g * np.exp(sig * rng.standard_normal(size))
    relax = rng.standard_normal(size)
    return PopulationOutcome(g0=g0, relax_draw=relax,
                             t_program=np.full(size, clock), cycles=cycles + 1,
                             iterations=np.ones(size, dtype=np.int64),
                             converged=np.ones(size, dtype=bool),
                             state_kind=HRS)


def exact_population(size: int, level: TargetLevel, *, clock: float = 0.0,
                     initial_cycles: int | np.ndarray = 0) -> PopulationOutcome:
    """Deterministic oracle write: every cell lands on the window centre.

    Consumes no random draws and reports zero verify iterations.
    """
    cycles = np.broadcast_to(np.asarray(initial_cycles, dtype=np.int64),
                             (size,)).copy()
    return PopulationOutcome(g0=np.full(size, level.center),
                             relax_draw=np.zeros(size),
                             t_program=np.full(size, clock), cycles=cycles + 1,
                             iterations=np.zeros(size, dtype=np.int64),
                             converged=np.ones(size, dtype=bool),
                             state_kind=LRS)


def _outcome_from_population(pop: PopulationOutcome) -> ProgramOutcome:
    return ProgramOutcome(converged=bool(pop.converged[0]),
                          iterations=int(pop.iterations[0]),
                          final_cell=pop.cell(0))


def program_immediate(cell: CellState, level: TargetLevel, params: DeviceParams,
                      rng: np.random.Generator, *,
                      max_iter: int = DEFAULT_MAX_ITER,
                      clock: float = 0.0) -> ProgramOutcome:
    """RESET+SET loop verified immediately after each SET (no settling wait)."""
    pop = program_population(1, level, params, rng, settle_time=0.0,
                             max_iter=max_iter, clock=clock,
                             initial_cycles=cell.cycles)
    return _outcome_from_population(pop)


def program_settled(cell: CellState, level: TargetLevel, params: DeviceParams,
                    rng: np.random.Generator, *,
                    settle_time: float = DEFAULT_SETTLE_TIME,
                    max_iter: int = DEFAULT_MAX_ITER,
                    clock: float = 0.0) -> ProgramOutcome:
    """RESET+SET loop verified ``settle_time`` seconds after each SET.

    The clock seen by the caller advances by ``iterations * settle_time``.
    """
    pop = program_population(1, level, params, rng, settle_time=settle_time,
                             max_iter=max_iter, clock=clock,
                             initial_cycles=cell.cycles)
    return _outcome_from_population(pop)


def bit_errors(pop: PopulationOutcome, level: TargetLevel,
               params: DeviceParams, t: float) -> int:
    """Cells outside the window at time ``t``; non-converged cells always count."""
    g = pop.conductance_at(params, t)
    out = ~level.contains(g)
    return int(np.count_nonzero(out | ~pop.converged))
