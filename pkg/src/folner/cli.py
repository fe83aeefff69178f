"""Command-line entry point: ``folner run | verify | list``.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical or horizon error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .averaging import SequenceError
from .continuum import InvalidDomain, QuadratureNonconvergence
from .experiments import ConfigError, ExperimentConfig, Report, list_examples, run_experiment, verify
from .orbit import HorizonExceeded

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _add_experiment_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with ExperimentConfig fields")
    p.add_argument("--example", help="example name (see `folner list`)")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--depth", type=int, dest="cylinder_depth", help="cylinder depth of the test family")
    p.add_argument("--lambda", dest="lambda_", metavar="LAMBDA", help="Sol eigenvalue, e.g. '(3+sqrt(5))/2'")
    p.add_argument("--arithmetic", choices=["exact", "float"])
    p.add_argument("--tolerance", type=float)
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folner", description="Delta-averaging sequences on orbit graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_experiment_args(sub.add_parser("run", help="run an experiment and write its report"))
    _add_experiment_args(sub.add_parser("verify", help="run and check every identity in the summary"))
    sub.add_parser("list", help="list the available examples")
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    data = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
    overrides = {
        "example": args.example, "n_max": args.n_max, "cylinder_depth": args.cylinder_depth,
        "lambda": args.lambda_, "arithmetic": args.arithmetic, "tolerance": args.tolerance,
        "format": args.format, "output": None if args.out is None else str(args.out),
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig.from_mapping(data)
    except TypeError as exc:
        raise ConfigError("config", str(exc)) from exc


def render(report: Report, fmt: str) -> str:
    return report.to_csv() if fmt == "csv" else report.to_json()


def emit(report: Report, cfg: ExperimentConfig) -> None:
    text = render(report, cfg.format)
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        Path(cfg.output).write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        sys.stdout.write(json.dumps(list_examples(), sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    try:
        cfg = load_config(args)
        if args.command == "run":
            emit(run_experiment(cfg), cfg)
            return EXIT_OK
        passed, report = verify(cfg)
        if cfg.output is not None:
            emit(report, cfg)
        status = {"example": cfg.example, "passed": passed, "failures": report.summary["failures"]}
        sys.stdout.write(json.dumps(status, sort_keys=True) + "\n")
        return EXIT_OK if passed else EXIT_VERIFY_FAILED
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HorizonExceeded, QuadratureNonconvergence, SequenceError, InvalidDomain, ArithmeticError) as exc:
        print(f"numeric error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
