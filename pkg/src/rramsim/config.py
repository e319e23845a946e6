"""Run configuration: JSON schema, validation, and shipped presets.

A run configuration is a single JSON document::

    {
      "seed": 1234,                 // required
      "out": "results",             // optional default output directory
      "model": { ... },             // optional, defaults to the calibrated set
      "experiments": [              // required, one entry per kind
        {"kind": "relaxation", "trials": 12000, ...},
        ...
      ]
    }

``model`` bundles the device parameters, the multilevel window scheme, the
level used as binary logic 1, the settling wait and the verify-iteration
budget.  Every omitted field falls back to the calibrated defaults.

Three presets ship with the package and can be passed to the CLI in place
of a config path: ``defaults.calibrated`` (the tuned parameter set and the
full experiment battery), ``defaults.noiseless`` (zero-variability oracle
runs) and ``defaults.stress`` (exaggerated variability).

Unknown keys anywhere in the document are rejected so typos cannot be
silently ignored.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable

from .device import DeviceParams
from .programming import STRATEGIES, LevelScheme, make_level_scheme

KINDS = (
    "relaxation",
    "bec_iterations",
    "bec_time",
    "retention",
    "scouting_success",
    "endurance",
    "current_histogram",
    "adder",
    "adder3",
    "calibrate",
)

SAMPLING_MODES = ("per_k", "pattern")
OPERAND_SAMPLING_MODES = ("uniform", "exhaustive")

_PARAM_FIELDS = (
    "lrs_median_g", "lrs_sigma", "hrs_median_g", "hrs_sigma",
    "relax_drift_mu", "relax_sigma_inf", "relax_tau",
    "endurance_widen_per_decade", "read_noise_sigma", "v_read",
)


class ConfigError(ValueError):
    """A configuration document violates the schema.

    The message names the offending field with a dotted path.
    """


@dataclass(frozen=True)
class ModelConfig:
    """Device, level scheme and programming knobs shared by all experiments."""

    params: DeviceParams
    scheme: LevelScheme
    binary_level_index: int
    settle_time: float
    max_iter: int

    def binary_level(self):
        return self.scheme.levels[self.binary_level_index]


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment to run: a kind plus fully resolved options."""

    kind: str
    options: dict[str, Any]


@dataclass(frozen=True)
class RunConfig:
    seed: int
    model: ModelConfig
    experiments: tuple[ExperimentSpec, ...]
    out: str | None = None


def default_model() -> ModelConfig:
    """The calibrated model: tuned device params, 4 windows at 40..100 uS."""
    return ModelConfig(
        params=DeviceParams(),
        scheme=make_level_scheme(4, 40.0, 100.0, 5.0),
        binary_level_index=2,
        settle_time=5.0,
        max_iter=250,
    )


# ---- field parsers ----------------------------------------------------


def _fail(path: str, message: str) -> ConfigError:
    return ConfigError(f"{path}: {message}")


def _as_int(value: Any, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(path, "must be an integer")
    if minimum is not None and value < minimum:
        raise _fail(path, f"must be >= {minimum}")
    return value


def _as_float(value: Any, path: str, minimum: float | None = None,
              exclusive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(path, "must be a number")
    value = float(value)
    if minimum is not None:
        if exclusive and value <= minimum:
            raise _fail(path, f"must be > {minimum}")
        if not exclusive and value < minimum:
            raise _fail(path, f"must be >= {minimum}")
    return value


def _as_list(value: Any, path: str) -> list:
    if not isinstance(value, list) or not value:
        raise _fail(path, "must be a non-empty list")
    return value


def _unique(values: list, path: str) -> None:
    if len(set(values)) != len(values):
        raise _fail(path, "contains duplicates")


def _choice(value: Any, path: str, allowed: tuple[str, ...]) -> str:
    if value not in allowed:
        raise _fail(path, f"must be one of {', '.join(allowed)}")
    return value


# Option parsers receive (value, path, model) and return the canonical value.

def _opt_trials(v, path, model):
    return _as_int(v, path, minimum=1)


def _opt_calibration_samples(v, path, model):
    return _as_int(v, path, minimum=2)


def _opt_level_index(v, path, model):
    idx = _as_int(v, path, minimum=0)
    if idx >= model.scheme.n_levels:
        raise _fail(path, f"scheme has only {model.scheme.n_levels} levels")
    return idx


def _opt_strategies(v, path, model):
    v = _as_list(v, path)
    out = [_choice(s, f"{path}[{i}]", STRATEGIES) for i, s in enumerate(v)]
    _unique(out, path)
    return out


def _opt_time_list(v, path, model):
    v = _as_list(v, path)
    out = [_as_float(t, f"{path}[{i}]", minimum=0.0) for i, t in enumerate(v)]
    _unique(out, path)
    return out


def _opt_settle_times(v, path, model):
    v = _as_list(v, path)
    out = [_as_float(t, f"{path}[{i}]", minimum=0.0, exclusive=True)
           for i, t in enumerate(v)]
    _unique(out, path)
    return out


def _opt_n_operands(v, path, model):
    v = _as_list(v, path)
    out = [_as_int(n, f"{path}[{i}]", minimum=2) for i, n in enumerate(v)]
    _unique(out, path)
    return out


def _opt_decades(v, path, model):
    v = _as_list(v, path)
    out = [_as_int(d, f"{path}[{i}]", minimum=0) for i, d in enumerate(v)]
    _unique(out, path)
    if out != sorted(out):
        raise _fail(path, "must be sorted ascending")
    return out


def _opt_t_read(v, path, model):
    return _as_float(v, path, minimum=0.0)


def _opt_sampling(v, path, model):
    return _choice(v, path, SAMPLING_MODES)


def _opt_operand_sampling(v, path, model):
    return _choice(v, path, OPERAND_SAMPLING_MODES)


@dataclass(frozen=True)
class _Opt:
    default: Any
    parse: Callable[[Any, str, ModelConfig], Any]


_OPTIONS: dict[str, dict[str, _Opt]] = {
    "relaxation": {
        "trials": _Opt(4096, _opt_trials),
        "strategies": _Opt(["immediate", "settled"], _opt_strategies),
        "settle_times": _Opt([5.0, 30.0], _opt_settle_times),
        "read_times": _Opt([0.0, 3600.0], _opt_time_list),
        "level_index": _Opt(0, _opt_level_index),
    },
    "bec_iterations": {
        "trials": _Opt(4096, _opt_trials),
        "strategies": _Opt(["immediate", "settled"], _opt_strategies),
        "level_index": _Opt(0, _opt_level_index),
    },
    "bec_time": {
        "trials": _Opt(4096, _opt_trials),
        "strategies": _Opt(["immediate", "settled"], _opt_strategies),
        "read_times": _Opt([0.0, 1.0, 2.0, 5.0, 10.0, 30.0, 60.0, 300.0,
                            3600.0], _opt_time_list),
        "level_index": _Opt(0, _opt_level_index),
    },
    "retention": {
        "trials": _Opt(4096, _opt_trials),
        "strategies": _Opt(["settled"], _opt_strategies),
        "read_times": _Opt([60.0, 3600.0, 2592000.0], _opt_time_list),
        "level_index": _Opt(0, _opt_level_index),
    },
    "scouting_success": {
        "trials": _Opt(2048, _opt_trials),
        "n_operands": _Opt([2, 4, 8, 16], _opt_n_operands),
        "strategies": _Opt(["settled", "raw"], _opt_strategies),
        "t_read": _Opt(1.0, _opt_t_read),
        "calibration_samples": _Opt(1000, _opt_calibration_samples),
        "sampling": _Opt("per_k", _opt_sampling),
    },
    "endurance": {
        "trials": _Opt(2048, _opt_trials),
        "n_operands": _Opt([4], _opt_n_operands),
        "strategies": _Opt(["settled"], _opt_strategies),
        "decades": _Opt([0, 2, 4, 6], _opt_decades),
        "t_read": _Opt(1.0, _opt_t_read),
        "calibration_samples": _Opt(1000, _opt_calibration_samples),
    },
    "current_histogram": {
        "trials": _Opt(2048, _opt_trials),
        "n_operands": _Opt([16], _opt_n_operands),
        "strategies": _Opt(["settled", "raw"], _opt_strategies),
        "t_read": _Opt(1.0, _opt_t_read),
    },
    "adder": {
        "trials": _Opt(4096, _opt_trials),
        "strategies": _Opt(["settled", "immediate"], _opt_strategies),
        "read_times": _Opt([1.0, 3600.0], _opt_time_list),
        "calibration_samples": _Opt(1000, _opt_calibration_samples),
        "operand_sampling": _Opt("uniform", _opt_operand_sampling),
    },
    "adder3": {
        "trials": _Opt(4096, _opt_trials),
        "strategies": _Opt(["settled"], _opt_strategies),
        "read_times": _Opt([1.0], _opt_time_list),
        "calibration_samples": _Opt(1000, _opt_calibration_samples),
        "operand_sampling": _Opt("uniform", _opt_operand_sampling),
    },
    "calibrate": {
        "n_operands": _Opt([2, 4, 8, 16], _opt_n_operands),
        "strategies": _Opt(["settled", "raw"], _opt_strategies),
        "t_read": _Opt(1.0, _opt_t_read),
        "calibration_samples": _Opt(1000, _opt_calibration_samples),
    },
}


# ---- document parsing -------------------------------------------------


def _expect_mapping(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise _fail(path, "must be a JSON object")
    return value


def _reject_unknown(doc: dict, allowed, path: str) -> None:
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise _fail(path, f"unknown keys: {', '.join(unknown)}")


def parse_model(doc: Any) -> ModelConfig:
    """Build a ModelConfig from the optional ``model`` section."""
    base = default_model()
    if doc is None:
        return base
    doc = _expect_mapping(doc, "model")
    _reject_unknown(doc, ("params", "scheme", "binary_level_index",
                          "settle_time", "max_iter"), "model")

    params = base.params
    if "params" in doc:
        pdoc = _expect_mapping(doc["params"], "model.params")
        _reject_unknown(pdoc, _PARAM_FIELDS, "model.params")
        merged = {f: getattr(base.params, f) for f in _PARAM_FIELDS}
        for name, value in pdoc.items():
            merged[name] = _as_float(value, f"model.params.{name}")
        params = DeviceParams(**merged)
        try:
            params.validate()
        except ValueError as exc:
            raise _fail("model.params", str(exc)) from exc

    scheme = base.scheme
    if "scheme" in doc:
        sdoc = _expect_mapping(doc["scheme"], "model.scheme")
        _reject_unknown(sdoc, ("n_levels", "g_lo", "g_hi",
                               "window_half_width"), "model.scheme")
        try:
            scheme = make_level_scheme(
                _as_int(sdoc.get("n_levels", 4), "model.scheme.n_levels",
                        minimum=2),
                _as_float(sdoc.get("g_lo", 40.0), "model.scheme.g_lo"),
                _as_float(sdoc.get("g_hi", 100.0), "model.scheme.g_hi"),
                _as_float(sdoc.get("window_half_width", 5.0),
                          "model.scheme.window_half_width"),
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise _fail("model.scheme", str(exc)) from exc

    binary_level_index = doc.get("binary_level_index",
                                 base.binary_level_index)
    binary_level_index = _as_int(binary_level_index,
                                 "model.binary_level_index", minimum=0)
    if binary_level_index >= scheme.n_levels:
        raise _fail("model.binary_level_index",
                    f"scheme has only {scheme.n_levels} levels")

    return ModelConfig(
        params=params,
        scheme=scheme,
        binary_level_index=binary_level_index,
        settle_time=_as_float(doc.get("settle_time", base.settle_time),
                              "model.settle_time", minimum=0.0),
        max_iter=_as_int(doc.get("max_iter", base.max_iter),
                         "model.max_iter", minimum=1),
    )


def parse_experiment(doc: Any, model: ModelConfig,
                     path: str) -> ExperimentSpec:
    doc = _expect_mapping(doc, path)
    if "kind" not in doc:
        raise _fail(f"{path}.kind", "is required")
    kind = _choice(doc["kind"], f"{path}.kind", KINDS)
    schema = _OPTIONS[kind]
    _reject_unknown(doc, ("kind", *schema), path)

    options: dict[str, Any] = {}
    for name, opt in schema.items():
        raw = doc.get(name, opt.default)
        options[name] = opt.parse(raw, f"{path}.{name}", model)

    if kind in ("scouting_success", "endurance"):
        per_k = kind == "endurance" or options["sampling"] == "per_k"
        if per_k:
            need = max(options["n_operands"]) + 1
            if options["trials"] < need:
                raise _fail(f"{path}.trials",
                            f"per-operand-count sampling needs >= {need} "
                            f"trials to cover every count class")
    return ExperimentSpec(kind=kind, options=options)


def parse_config(doc: Any) -> RunConfig:
    """Parse and validate a full run document; raises ConfigError."""
    doc = _expect_mapping(doc, "config")
    _reject_unknown(doc, ("seed", "out", "model", "experiments"), "config")

    if "seed" not in doc:
        raise _fail("seed", "is required")
    seed = _as_int(doc["seed"], "seed", minimum=0)

    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        raise _fail("out", "must be a string path")

    model = parse_model(doc.get("model"))

    if "experiments" not in doc:
        raise _fail("experiments", "is required")
    exp_docs = _as_list(doc["experiments"], "experiments")
    experiments = tuple(
        parse_experiment(e, model, f"experiments[{i}]")
        for i, e in enumerate(exp_docs))
    kinds = [e.kind for e in experiments]
    if len(set(kinds)) != len(kinds):
        raise _fail("experiments",
                    "each kind may appear at most once (one output file per "
                    "kind)")
    return RunConfig(seed=seed, model=model, experiments=experiments, out=out)


def violations(doc: Any) -> list[str]:
    """All schema problems found in ``doc``; empty means valid.

    Collects one message per independently checkable section rather than
    stopping at the first problem.
    """
    found: list[str] = []
    if not isinstance(doc, dict):
        return ["config: must be a JSON object"]

    try:
        _reject_unknown(doc, ("seed", "out", "model", "experiments"), "config")
    except ConfigError as exc:
        found.append(str(exc))

    if "seed" not in doc:
        found.append("seed: is required")
    else:
        try:
            _as_int(doc["seed"], "seed", minimum=0)
        except ConfigError as exc:
            found.append(str(exc))

    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        found.append("out: must be a string path")

    model = None
    try:
        model = parse_model(doc.get("model"))
    except ConfigError as exc:
        found.append(str(exc))

    if "experiments" not in doc:
        found.append("experiments: is required")
    elif not isinstance(doc["experiments"], list) or not doc["experiments"]:
        found.append("experiments: must be a non-empty list")
    elif model is not None:
        kinds = []
        for i, e in enumerate(doc["experiments"]):
            try:
                spec = parse_experiment(e, model, f"experiments[{i}]")
                kinds.append(spec.kind)
            except ConfigError as exc:
                found.append(str(exc))
        if len(set(kinds)) != len(kinds):
            found.append("experiments: each kind may appear at most once")
    return found


# ---- files and presets ------------------------------------------------


def load_config_file(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    return parse_config(doc)


def preset_names() -> list[str]:
    root = resources.files("rramsim").joinpath("presets")
    return sorted(p.name[:-len(".json")] for p in root.iterdir()
                  if p.name.endswith(".json"))


def load_preset_document(name: str) -> dict:
    path = resources.files("rramsim").joinpath("presets", f"{name}.json")
    if not path.is_file():
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return json.loads(path.read_text(encoding="utf-8"))


def resolve_config(arg: str) -> tuple[RunConfig, dict]:
    """Load ``arg`` as a config file path, else as a shipped preset name.

    Returns the parsed config together with the raw document.
    """
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{arg}: not valid JSON ({exc})") from exc
    else:
        doc = load_preset_document(arg)
    return parse_config(doc), doc
