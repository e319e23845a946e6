"""Single-cell model: pulse sampling, relaxation envelope, reads."""

import dataclasses
import math

import numpy as np
import pytest

from rramsim.device import (
    G_FLOOR,
    HRS,
    LRS,
    RELAX_SATURATION_S,
    CellState,
    DeviceParams,
    conductance_at,
    effective_sigma,
    pristine_cell,
    read_current,
    relaxation_fraction,
    reset_pulse,
    set_pulse,
)

PARAMS = DeviceParams()


def quiet_params(**overrides) -> DeviceParams:
    """All stochastic terms zeroed; overrides applied on top."""
    base = dict(lrs_sigma=0.0, hrs_sigma=0.0, relax_drift_mu=0.0,
                relax_sigma_inf=0.0, read_noise_sigma=0.0)
    base.update(overrides)
    return dataclasses.replace(PARAMS, **base)


def test_pristine_cell_is_nominal_hrs():
    cell = pristine_cell(PARAMS)
    assert cell.state_kind == HRS
    assert cell.g0 == PARAMS.hrs_median_g
    assert cell.relax_draw == 0.0
    assert cell.cycles == 0


def test_set_pulse_draw_order_and_formula():
    # Twin stream: one conductance deviate, then one relaxation deviate.
    rng = np.random.default_rng(7)
    cell = set_pulse(pristine_cell(PARAMS), PARAMS, rng, t=2.5)

    twin = np.random.default_rng(7)
    z_g = twin.standard_normal()
    z_relax = twin.standard_normal()
    assert cell.g0 == PARAMS.lrs_median_g * math.exp(PARAMS.lrs_sigma * z_g)
    assert cell.relax_draw == z_relax
    assert cell.t_program == 2.5
    assert cell.cycles == 1
    assert cell.state_kind == LRS


def test_reset_pulse_mirrors_set_pulse():
    rng = np.random.default_rng(11)
    cell = reset_pulse(pristine_cell(PARAMS), PARAMS, rng)

    twin = np.random.default_rng(11)
    z_g = twin.standard_normal()
    assert cell.g0 == PARAMS.hrs_median_g * math.exp(PARAMS.hrs_sigma * z_g)
    assert cell.state_kind == HRS
    assert cell.cycles == 1


def test_pulses_accumulate_cycles():
    rng = np.random.default_rng(0)
    cell = pristine_cell(PARAMS)
    for expected in (1, 2, 3):
        cell = set_pulse(cell, PARAMS, rng)
        assert cell.cycles == expected
    cell = reset_pulse(cell, PARAMS, rng)
    assert cell.cycles == 4


def test_effective_sigma_widens_per_decade():
    assert effective_sigma(0.6, 0, 0.01) == 0.6
    assert effective_sigma(0.6, 1, 0.01) == 0.6
    assert effective_sigma(0.6, 100, 0.01) == pytest.approx(0.6 * 1.01**2)
    assert effective_sigma(0.6, 10**6, 0.5) == pytest.approx(0.6 * 1.5**6)
    out = effective_sigma(1.0, np.array([1, 10, 100]), 0.1)
    assert out == pytest.approx([1.0, 1.1, 1.21])


def test_effective_sigma_flat_without_widening():
    for cycles in (0, 1, 10**6):
        assert effective_sigma(0.45, cycles, 0.0) == 0.45


def test_relaxation_fraction_envelope_shape():
    tau = PARAMS.relax_tau
    assert relaxation_fraction(0.0, tau) == 0.0
    assert relaxation_fraction(RELAX_SATURATION_S, tau) == 1.0
    assert relaxation_fraction(10 * RELAX_SATURATION_S, tau) == 1.0
    grid = [0.01, 0.1, 1.0, 5.0, 30.0, 600.0, 3600.0]
    fracs = [relaxation_fraction(t, tau) for t in grid]
    assert fracs == sorted(fracs)
    assert all(0.0 <= f <= 1.0 for f in fracs)
    # The calibrated shape front-loads the drift into the first seconds.
    assert relaxation_fraction(5.0, tau) > 0.95
    with pytest.raises(ValueError):
        relaxation_fraction(-1.0, tau)


def test_relaxation_fraction_gentle_tau():
    # A large tau spreads the drift out instead of front-loading it.
    assert relaxation_fraction(5.0, 1e6) < 0.1


def test_drift_monotone_and_bounded():
    cell = CellState(g0=50.0, relax_draw=2.0, t_program=0.0, cycles=1,
                     state_kind=LRS)
    bound = abs(PARAMS.relax_drift_mu) + abs(
        PARAMS.relax_sigma_inf * cell.relax_draw)
    previous = 0.0
    for t in [0.0, 0.5, 1.0, 5.0, 30.0, 600.0, 3600.0, 7200.0]:
        delta = abs(conductance_at(cell, PARAMS, t) - cell.g0)
        assert delta >= previous
        assert delta <= bound + 1e-12
        previous = delta
    assert conductance_at(cell, PARAMS, 0.0) == cell.g0


def test_drift_saturates_exactly():
    cell = CellState(g0=50.0, relax_draw=-1.3, t_program=10.0, cycles=1,
                     state_kind=LRS)
    at_sat = conductance_at(cell, PARAMS, 10.0 + RELAX_SATURATION_S)
    assert conductance_at(cell, PARAMS, 10.0 + 2 * RELAX_SATURATION_S) == at_sat
    assert conductance_at(cell, PARAMS, 1e9) == at_sat


def test_conductance_floor():
    cell = CellState(g0=1.0, relax_draw=-50.0, t_program=0.0, cycles=1,
                     state_kind=LRS)
    assert conductance_at(cell, PARAMS, 3600.0) == G_FLOOR


def test_read_before_program_rejected():
    cell = CellState(g0=50.0, relax_draw=0.0, t_program=100.0, cycles=1,
                     state_kind=LRS)
    with pytest.raises(ValueError):
        conductance_at(cell, PARAMS, 99.0)


def test_zero_noise_everything_deterministic():
    params = quiet_params()
    rng = np.random.default_rng(123)
    cell = set_pulse(pristine_cell(params), params, rng)
    assert cell.g0 == params.lrs_median_g
    for t in [0.0, 1.0, 3600.0, 1e6]:
        assert conductance_at(cell, params, t) == cell.g0
        assert read_current(cell, params, t, rng) == cell.g0 * params.v_read
    other = set_pulse(pristine_cell(params), params,
                      np.random.default_rng(999))
    assert other.g0 == cell.g0


def test_read_is_ohms_law_plus_noise():
    rng = np.random.default_rng(5)
    cell = CellState(g0=80.0, relax_draw=0.5, t_program=0.0, cycles=1,
                     state_kind=LRS)
    i = read_current(cell, PARAMS, 7.0, rng)
    twin = np.random.default_rng(5)
    expected = (conductance_at(cell, PARAMS, 7.0) * PARAMS.v_read
                + twin.normal(0.0, PARAMS.read_noise_sigma))
    assert i == expected


def test_reads_never_mutate_the_cell():
    rng = np.random.default_rng(21)
    cell = CellState(g0=60.0, relax_draw=1.0, t_program=0.0, cycles=3,
                     state_kind=LRS)
    before = dataclasses.asdict(cell)
    for t in (0.0, 10.0, 3600.0):
        read_current(cell, PARAMS, t, rng)
        conductance_at(cell, PARAMS, t)
    assert dataclasses.asdict(cell) == before
    # Same time, same state: only the fresh noise draw differs.
    a = read_current(cell, quiet_params(), 50.0, rng)
    b = read_current(cell, quiet_params(), 50.0, rng)
    assert a == b


def test_cell_state_validation():
    with pytest.raises(ValueError):
        CellState(g0=0.0, relax_draw=0.0, t_program=0.0, cycles=0,
                  state_kind=LRS)
    with pytest.raises(ValueError):
        CellState(g0=1.0, relax_draw=0.0, t_program=0.0, cycles=-1,
                  state_kind=LRS)
    with pytest.raises(ValueError):
        CellState(g0=1.0, relax_draw=0.0, t_program=0.0, cycles=0,
                  state_kind="mrs")


@pytest.mark.parametrize("overrides", [
    {"lrs_median_g": 1.0, "hrs_median_g": 2.0},   # states out of order
    {"hrs_median_g": 0.0},
    {"lrs_sigma": -0.1},
    {"read_noise_sigma": -1.0},
    {"relax_tau": 0.0},
    {"v_read": 0.0},
])
def test_params_validation_rejects(overrides):
    with pytest.raises(ValueError):
        dataclasses.replace(PARAMS, **overrides).validate()


def test_default_params_validate():
    PARAMS.validate()
