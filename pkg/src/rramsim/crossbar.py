"""1T1R crossbar array: dense cell grid, explicit clock, parallel reads.

The array owns a monotone simulation clock.  Programming a cell with the
``settled`` strategy advances the clock by the settling wait per verify
iteration; all other strategies leave it unchanged (pulses are treated as
instantaneous).  Reads never mutate state.

In-memory logic selects several cells on one word line and senses the sum
of their bit-line currents; ``read_parallel`` models that as an ideal sum
of per-cell Ohm's-law currents, each with its own read-noise draw.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .device import (
    HRS,
    LRS,
    CellState,
    DeviceParams,
    conductance_at,
    pristine_cell,
    read_current,
)
from .programming import (
    DEFAULT_MAX_ITER,
    DEFAULT_SETTLE_TIME,
    EXACT,
    IMMEDIATE,
    RAW,
    SETTLED,
    ProgramOutcome,
    TargetLevel,
    exact_population,
    program_population,
    raw_reset_population,
    raw_set_population,
)

SNAPSHOT_VERSION = 1

#: Level argument selecting the off state (single RESET, no verify).
OFF = "hrs"


@dataclass(frozen=True)
class SelectionMask:
    """One word line and the bit lines to activate on it."""

    row: int
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cols) == 0:
            raise ValueError("mask selects no columns")
        if len(set(self.cols)) != len(self.cols):
            raise ValueError("mask selects a column twice")

    def validate_for(self, rows: int, cols: int) -> None:
        if not 0 <= self.row < rows:
            raise ValueError(f"row {self.row} outside array of {rows} rows")
        for c in self.cols:
            if not 0 <= c < cols:
                raise ValueError(f"column {c} outside array of {cols} columns")


class CrossbarArray:
    """Dense grid of cells with one shared simulation clock."""

    def __init__(self, rows: int = 32, cols: int = 32,
                 params: DeviceParams | None = None) -> None:
        if rows < 1 or cols < 1:
            raise ValueError("array dimensions must be >= 1")
        params = params or DeviceParams()
        base = pristine_cell(params)
        self.rows = rows
        self.cols = cols
        self.clock = 0.0
        self._g0 = np.full((rows, cols), base.g0)
        self._relax = np.zeros((rows, cols))
        self._t_program = np.zeros((rows, cols))
        self._cycles = np.zeros((rows, cols), dtype=np.int64)
        self._is_lrs = np.zeros((rows, cols), dtype=bool)

    # ---- cell access -------------------------------------------------

    def cell(self, row: int, col: int) -> CellState:
        return CellState(g0=float(self._g0[row, col]),
                         relax_draw=float(self._relax[row, col]),
                         t_program=float(self._t_program[row, col]),
                         cycles=int(self._cycles[row, col]),
                         state_kind=LRS if self._is_lrs[row, col] else HRS)

    def set_cell(self, row: int, col: int, cell: CellState) -> None:
        if cell.t_program > self.clock:
            raise ValueError("cell t_program lies in the array's future")
        self._g0[row, col] = cell.g0
        self._relax[row, col] = cell.relax_draw
        self._t_program[row, col] = cell.t_program
        self._cycles[row, col] = cell.cycles
        self._is_lrs[row, col] = cell.state_kind == LRS

    # ---- clock -------------------------------------------------------

    def advance_clock(self, dt: float) -> None:
        if dt < 0.0:
            raise ValueError("dt must be >= 0")
        self.clock += dt

    # ---- programming -------------------------------------------------

    def program_cell(self, row: int, col: int, level: TargetLevel | str,
                     strategy: str, params: DeviceParams,
                     rng: np.random.Generator, *,
                     settle_time: float = DEFAULT_SETTLE_TIME,
                     max_iter: int = DEFAULT_MAX_ITER) -> ProgramOutcome:
        """Program one cell and advance the clock by the strategy's elapsed time.

        ``level`` is either a TargetLevel window or the string ``"hrs"`` for
        the off state (single RESET, no verify, any strategy).
        """
        start_cycles = int(self._cycles[row, col])
        if isinstance(level, str):
            if level != OFF:
                raise ValueError(f"unknown level {level!r}")
            pop = raw_reset_population(1, params, rng, clock=self.clock,
                                       initial_cycles=start_cycles)
        elif strategy == RAW:
            pop = raw_set_population(1, params, rng, clock=self.clock,
                                     initial_cycles=start_cycles)
        elif strategy == IMMEDIATE:
            pop = program_population(1, level, params, rng, settle_time=0.0,
                                     max_iter=max_iter, clock=self.clock,
                                     initial_cycles=start_cycles)
        elif strategy == SETTLED:
            pop = program_population(1, level, params, rng,
                                     settle_time=settle_time,
                                     max_iter=max_iter, clock=self.clock,
                                     initial_cycles=start_cycles)
            self.clock += float(pop.iterations[0]) * settle_time
        elif strategy == EXACT:
            pop = exact_population(1, level, clock=self.clock,
                                   initial_cycles=start_cycles)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")

        outcome = ProgramOutcome(converged=bool(pop.converged[0]),
                                 iterations=int(pop.iterations[0]),
                                 final_cell=pop.cell(0))
        self.set_cell(row, col, outcome.final_cell)
        return outcome

    # ---- reading -----------------------------------------------------

    def read_single(self, row: int, col: int, params: DeviceParams,
                    rng: np.random.Generator) -> float:
        """Current (uA) of one cell at the current clock, one noise draw."""
        return read_current(self.cell(row, col), params, self.clock, rng)

    def read_parallel(self, mask: SelectionMask, params: DeviceParams,
                      rng: np.random.Generator) -> float:
        """Summed current (uA) of the masked cells at the current clock.

        Each selected cell contributes its own Ohm's-law current and an
        independent read-noise draw (taken in mask column order).
        """
        mask.validate_for(self.rows, self.cols)
        total = 0.0
        for c in mask.cols:
            total += conductance_at(self.cell(mask.row, c), params, self.clock)
        total *= params.v_read
        noise = rng.normal(0.0, params.read_noise_sigma, size=len(mask.cols))
        return float(total + noise.sum())

    # ---- snapshots ----------------------------------------------------

    def to_json(self) -> str:
        """Serialize the full array state (documented schema, version 1)."""
        doc = {
            "version": SNAPSHOT_VERSION,
            "rows": self.rows,
            "cols": self.cols,
            "clock": self.clock,
            "cells": {
                "g0": self._g0.tolist(),
                "relax_draw": self._relax.tolist(),
                "t_program": self._t_program.tolist(),
                "cycles": self._cycles.tolist(),
                "state_kind": [[LRS if v else HRS for v in row]
                               for row in self._is_lrs],
            },
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CrossbarArray":
        doc = json.loads(text)
        if doc.get("version") != SNAPSHOT_VERSION:
            raise ValueError(f"unsupported snapshot version {doc.get('version')!r}")
        arr = cls(rows=int(doc["rows"]), cols=int(doc["cols"]))
        arr.clock = float(doc["clock"])
        cells = doc["cells"]
        arr._g0 = np.asarray(cells["g0"], dtype=float)
        arr._relax = np.asarray(cells["relax_draw"], dtype=float)
        arr._t_program = np.asarray(cells["t_program"], dtype=float)
        arr._cycles = np.asarray(cells["cycles"], dtype=np.int64)
        arr._is_lrs = np.asarray(
            [[k == LRS for k in row] for row in cells["state_kind"]])
        for name in ("_g0", "_relax", "_t_program", "_cycles", "_is_lrs"):
            if getattr(arr, name).shape != (arr.rows, arr.cols):
                raise ValueError(f"snapshot field {name[1:]} has a wrong shape")
        if np.any(arr._t_program > arr.clock):
            raise ValueError("snapshot has a cell programmed in the future")
        return arr
