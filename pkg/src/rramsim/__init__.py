"""Stochastic simulator for 1T1R RRAM crossbars.

Core pieces: a per-cell device model with cycle-to-cycle variability and
post-program relaxation (:mod:`~rramsim.device`), program-and-verify
strategies (:mod:`~rramsim.programming`), a crossbar array with parallel
summed-current reads (:mod:`~rramsim.crossbar`), n-operand in-memory
NAND/NOR/XOR (:mod:`~rramsim.logic`), a multilevel in-memory adder
(:mod:`~rramsim.adder`), and a config-driven Monte Carlo harness
(:mod:`~rramsim.experiments`, CLI ``simcmd``).
"""

from .adder import (
    AdderErrorReport,
    AdderTrial,
    SumDecoder,
    calibrate_sum_decoder,
    encode,
    error_report,
    max_sum,
)
from .config import (
    ConfigError,
    ExperimentSpec,
    KINDS,
    ModelConfig,
    RunConfig,
    default_model,
    load_config_file,
    load_preset_document,
    parse_config,
    preset_names,
    resolve_config,
    violations,
)
from .crossbar import OFF, CrossbarArray, SelectionMask
from .device import (
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
from .experiments import (
    CSV_HEADERS,
    ExperimentResult,
    endurance_sweep,
    run_config,
    run_experiment,
    scouting_success_rate,
)
from .logic import (
    NAND,
    NOR,
    OPS,
    XOR,
    CalibrationError,
    ReferenceSet,
    calibrate_references,
    classify,
    classify_batch,
    minimal_error_threshold,
    truth_from_count,
    truth_value,
)
from .output import wald_interval
from .programming import (
    EXACT,
    IMMEDIATE,
    RAW,
    SETTLED,
    STRATEGIES,
    LevelScheme,
    PopulationOutcome,
    ProgramOutcome,
    TargetLevel,
    bit_errors,
    exact_population,
    make_level_scheme,
    program_immediate,
    program_population,
    program_settled,
    raw_reset_population,
    raw_set_population,
)

__version__ = "0.1.0"
