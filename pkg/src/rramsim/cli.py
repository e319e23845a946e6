"""``simcmd``: run, validate, and list the simulator's experiment configs.

Commands::

    simcmd run <config-or-preset> [--seed N] [--out DIR] [--workers K]
    simcmd validate <config-or-preset>
    simcmd presets

``<config-or-preset>`` is a JSON config path if such a file exists,
otherwise the name of a shipped preset (see ``simcmd presets``).  Each
experiment kind writes ``<out>/<kind>.csv`` and ``<out>/<kind>.summary.json``.
The output directory defaults to ``$SIMCMD_OUT``, falling back to
``./results``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .config import (
    ConfigError,
    load_preset_document,
    preset_names,
    resolve_config,
    violations,
)
from .experiments import run_config
from .logic import CalibrationError

ENV_OUT = "SIMCMD_OUT"
DEFAULT_OUT = "results"


def _load_document(arg: str) -> dict:
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{arg}: not valid JSON ({exc})") from exc
    return load_preset_document(arg)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simcmd",
        description="Monte Carlo experiments on a simulated 1T1R RRAM "
                    "crossbar: programming, summed-current logic, and "
                    "multilevel addition.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run", help="run every experiment in a config file or preset")
    run_p.add_argument("config",
                       help="config JSON path, or a shipped preset name")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the seed in the config")
    run_p.add_argument("--out", default=None,
                       help=f"output directory (default: config 'out', then "
                            f"${ENV_OUT}, then ./{DEFAULT_OUT})")
    run_p.add_argument("--workers", type=int, default=1,
                       help="parallel worker processes (results are "
                            "identical for any value)")

    val_p = sub.add_parser(
        "validate", help="check a config without running anything")
    val_p.add_argument("config",
                       help="config JSON path, or a shipped preset name")

    sub.add_parser("presets", help="list shipped preset names")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "presets":
        for name in preset_names():
            print(name)
        return 0

    if args.command == "validate":
        try:
            doc = _load_document(args.config)
        except ConfigError as exc:
            print(str(exc), file=sys.stderr)
            return 2
        problems = violations(doc)
        if problems:
            for problem in problems:
                print(problem, file=sys.stderr)
            return 1
        print("ok")
        return 0

    # run
    if args.workers < 1:
        print("--workers must be >= 1", file=sys.stderr)
        return 2
    try:
        config, _ = resolve_config(args.config)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    out_dir = (args.out or config.out or os.environ.get(ENV_OUT)
               or DEFAULT_OUT)
    try:
        written = run_config(config, out_dir, workers=args.workers)
    except CalibrationError as exc:
        print(f"calibration failed: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"output failed: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
