"""Stochastic model of a single 1T1R resistive-memory cell.

Conductance is expressed in microsiemens (uS), current in microamps (uA),
voltage in volts and time in seconds, so Ohm's law maps directly:
I [uA] = G [uS] * V [V].

A programming pulse resamples the cell conductance from a lognormal
cycle-to-cycle distribution.  After a pulse the cell drifts ("relaxes")
along a frozen per-program-event trajectory: a single Gaussian deviate,
drawn at program time, scaled by a saturating log-time envelope.  Reads
see the drifted conductance plus fresh Gaussian current noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LRS = "lrs"
HRS = "hrs"

#: Lower clamp for any drifted conductance, uS.
G_FLOOR = 0.1

#: Drift is treated as fully settled at this age; G(t) is constant beyond it.
RELAX_SATURATION_S = 3600.0


@dataclass(frozen=True)
class DeviceParams:
    """Cell parameter set.  Defaults are the shipped calibrated values.

    ``relax_tau`` is a shape parameter of the log-time drift envelope, not a
    physical time constant.  The calibrated default is deliberately extreme so
    that a few seconds of settling capture ~96% of the total drift while the
    residual keeps creeping on a log scale out to one hour (see the preset
    notes in the README).
    """

    lrs_median_g: float = 74.0        # uS, median of the low-resistive state
    lrs_sigma: float = 0.6            # lognormal shape, cycle-to-cycle
    hrs_median_g: float = 2.0         # uS, median of the high-resistive state
    hrs_sigma: float = 0.45
    relax_drift_mu: float = 0.0       # uS, signed mean drift at saturation
    relax_sigma_inf: float = 2.0      # uS, drift spread at saturation
    relax_tau: float = 1e-75          # s, envelope shape parameter (> 0)
    endurance_widen_per_decade: float = 0.01
    read_noise_sigma: float = 0.4     # uA, fresh per read
    v_read: float = 0.4               # V

    def validate(self) -> None:
        if not (self.lrs_median_g > self.hrs_median_g > 0.0):
            raise ValueError("require lrs_median_g > hrs_median_g > 0")
        for name in ("lrs_sigma", "hrs_sigma", "relax_sigma_inf",
                     "endurance_widen_per_decade", "read_noise_sigma"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")
        if self.relax_tau <= 0.0:
            raise ValueError("relax_tau must be > 0")
        if self.v_read <= 0.0:
            raise ValueError("v_read must be > 0")


@dataclass(frozen=True)
class CellState:
    """Immutable snapshot of one cell.

    ``relax_draw`` is the frozen standard-normal deviate that, together with
    the drift envelope, fixes the cell's post-program trajectory until the
    next pulse.
    """

    g0: float            # uS, conductance right after the last pulse
    relax_draw: float    # standard-normal deviate, frozen per program event
    t_program: float     # s, simulation time of the last pulse
    cycles: int          # cumulative SET/RESET pulse count
    state_kind: str      # LRS or HRS

    def __post_init__(self) -> None:
        if self.g0 <= 0.0:
            raise ValueError("g0 must be > 0")
        if self.cycles < 0:
            raise ValueError("cycles must be >= 0")
        if self.state_kind not in (LRS, HRS):
            raise ValueError(f"unknown state_kind {self.state_kind!r}")


def pristine_cell(params: DeviceParams) -> CellState:
    """Fresh cell: nominal HRS, no history, no pending drift."""
    return CellState(g0=params.hrs_median_g, relax_draw=0.0, t_program=0.0,
                     cycles=0, state_kind=HRS)


def effective_sigma(sigma: float, cycles: int | np.ndarray,
                    widen_per_decade: float):
    """Cycle-to-cycle sigma widened by endurance wear.

    Grows by ``(1 + widen_per_decade)`` per decade of accumulated cycles;
    a pristine cell (cycles 0 or 1) sees the nominal sigma.
    """
    decades = np.log10(np.maximum(cycles, 1))
    return sigma * (1.0 + widen_per_decade) ** decades


def relaxation_fraction(age: float, tau: float) -> float:
    """Fraction of the saturated drift realized ``age`` seconds after a pulse.

    log1p(age/tau) / log1p(T_sat/tau), clamped to [0, 1]: zero at age 0,
    monotone, exactly 1 at and beyond RELAX_SATURATION_S.
    """
    if age < 0.0:
        raise ValueError("age must be >= 0")
    frac = math.log1p(age / tau) / math.log1p(RELAX_SATURATION_S / tau)
    return min(frac, 1.0)


def set_pulse(cell: CellState, params: DeviceParams, rng: np.random.Generator,
              t: float = 0.0) -> CellState:
    """Apply a SET pulse at simulation time ``t``.

    Resamples g0 from the LRS lognormal (sigma widened per the cell's cycle
    count), draws a fresh relaxation deviate, and bumps the cycle counter.
    Draw order: conductance deviate first, then relaxation deviate.
    """
    sigma = float(effective_sigma(params.lrs_sigma, cell.cycles,
                                  params.endurance_widen_per_decade))
    g0 = params.lrs_median_g * math.exp(sigma * rng.standard_normal())
    relax = rng.standard_normal()
    return CellState(g0=g0, relax_draw=relax, t_program=t,
                     cycles=cell.cycles + 1, state_kind=LRS)


def reset_pulse(cell: CellState, params: DeviceParams, rng: np.random.Generator,
                t: float = 0.0) -> CellState:
    """Apply a RESET pulse at simulation time ``t`` (HRS mirror of set_pulse)."""
    sigma = float(effective_sigma(params.hrs_sigma, cell.cycles,
                                  params.endurance_widen_per_decade))
    g0 = params.hrs_median_g * math.exp(sigma * rng.standard_normal())
    relax = rng.standard_normal()
    return CellState(g0=g0, relax_draw=relax, t_program=t,
                     cycles=cell.cycles + 1, state_kind=HRS)


def conductance_at(cell: CellState, params: DeviceParams, t: float) -> float:
    """Noiseless conductance at absolute time ``t`` >= the last pulse time.

    g0 plus the drift envelope times the cell's frozen drift amplitude,
    clamped below at G_FLOOR.  Pure: never mutates the cell.
    """
    if t < cell.t_program:
        raise ValueError(
            f"read time {t} precedes the last program event at {cell.t_program}")
    frac = relaxation_fraction(t - cell.t_program, params.relax_tau)
    drift = params.relax_drift_mu + params.relax_sigma_inf * cell.relax_draw
    return max(G_FLOOR, cell.g0 + frac * drift)


def read_current(cell: CellState, params: DeviceParams, t: float,
                 rng: np.random.Generator) -> float:
    """One read: Ohm's-law current at time ``t`` plus fresh Gaussian noise (uA)."""
    return (conductance_at(cell, params, t) * params.v_read
            + rng.normal(0.0, params.read_noise_sigma))
