"""Command-line interface.

Exit codes: 0 success, 1 configuration error, 2 I/O or data parse error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from typing import Optional, Sequence

from .classifiers import ClassifierKind, UnknownHyperparameterError
from .data import DataError
from .metaheuristics import (
    BENCHMARKS,
    BaConfig,
    IcaConfig,
    OptimizerConfigError,
    ba_optimize,
    ica_optimize,
)
from .pipeline import (
    ConfigError,
    ExperimentConfig,
    ExperimentIOError,
    emit_report,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2

_KIND_BY_NAME = {kind.value: kind for kind in ClassifierKind}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Usage problems are configuration errors (exit 1), not argparse's exit 2.
    def error(self, message: str):
        raise _UsageError(message)


def _parse_classifiers(spec: str) -> tuple[ClassifierKind, ...]:
    if spec.strip().lower() == "all":
        return tuple(ClassifierKind)
    kinds = []
    for name in spec.split(","):
        name = name.strip().lower()
        if name not in _KIND_BY_NAME:
            raise ConfigError(
                f"unknown classifier {name!r}; choose from "
                f"{', '.join(_KIND_BY_NAME)} or 'all'"
            )
        kinds.append(_KIND_BY_NAME[name])
    if not kinds:
        raise ConfigError("empty classifier list")
    return tuple(kinds)


def _parse_config_file(path: str) -> dict[str, float]:
    """Flat key=value lines; keys are ica.<param>, ba.<param>, or
    fitness_feature_penalty. Blank lines and #-comments are ignored."""
    values: dict[str, float] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ExperimentIOError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        try:
            values[key.strip()] = float(value.strip())
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: {value.strip()!r} is not a number") from None
    return values


def _apply_config_overrides(cfg: ExperimentConfig, overrides: dict[str, float]) -> ExperimentConfig:
    ica_fields = {f.name for f in dataclasses.fields(IcaConfig)} - {"seed"}
    ba_fields = {f.name for f in dataclasses.fields(BaConfig)} - {"seed"}
    ica_over: dict[str, float] = {}
    ba_over: dict[str, float] = {}
    extra: dict[str, float] = {}
    for key, value in overrides.items():
        scope, _, name = key.partition(".")
        if scope == "ica" and name in ica_fields:
            ica_over[name] = value
        elif scope == "ba" and name in ba_fields:
            ba_over[name] = value
        elif key == "fitness_feature_penalty":
            extra[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    int_fields = {"n_pop", "n_imp", "max_it"}
    ica_over = {k: (int(v) if k in int_fields else v) for k, v in ica_over.items()}
    ba_over = {k: (int(v) if k in int_fields else v) for k, v in ba_over.items()}
    return dataclasses.replace(
        cfg,
        ica=dataclasses.replace(cfg.ica, **ica_over),
        ba=dataclasses.replace(cfg.ba, **ba_over),
        **extra,
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="wrapfs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a feature-selection experiment")
    run.add_argument("--data", required=True, help="dataset file path")
    run.add_argument("--optimizer", default="ba", choices=["ica", "ba", "none"])
    run.add_argument("--classifiers", default="all", help="'all' or comma list (knn,nb,...)")
    run.add_argument("--seed", type=int, default=None, help="overrides WRAPFS_SEED")
    run.add_argument("--split", type=float, default=0.6, help="training fraction")
    run.add_argument("--cv-k", type=int, default=4, help="folds for the fitness CV")
    run.add_argument("--output", required=True, help="report file path")
    run.add_argument("--format", default="json", choices=["json", "csv"])
    run.add_argument("--config", default=None, help="key=value file for optimizer params")

    bench = sub.add_parser("bench-opt", help="optimizer-only convergence check")
    bench.add_argument("--function", required=True, choices=sorted(BENCHMARKS))
    bench.add_argument("--optimizer", required=True, choices=["ica", "ba"])
    bench.add_argument("--dim", type=int, default=10)
    bench.add_argument("--seed", type=int, default=None, help="overrides WRAPFS_SEED")
    return parser


def _resolve_seed(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("WRAPFS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"WRAPFS_SEED must be an integer, got {env!r}") from None


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        data_path=args.data,
        optimizer=args.optimizer,
        classifiers=_parse_classifiers(args.classifiers),
        split_fraction=args.split,
        cv_k=args.cv_k,
        seed=_resolve_seed(args.seed),
        output_path=args.output,
        output_format=args.format,
    )
    if args.config:
        cfg = _apply_config_overrides(cfg, _parse_config_file(args.config))
    cfg.validate()
    report = run_experiment(cfg, progress=lambda msg: print(msg, file=sys.stderr))
    emit_report(report, cfg.output_format, cfg.output_path)
    print(f"wrote {cfg.output_format} report to {cfg.output_path}")
    return EXIT_OK


def _cmd_bench_opt(args: argparse.Namespace) -> int:
    cost_fn = BENCHMARKS[args.function]
    seed = _resolve_seed(args.seed)
    if args.dim < 1:
        raise ConfigError(f"--dim must be >= 1, got {args.dim}")
    if args.optimizer == "ica":
        result = ica_optimize(cost_fn, args.dim, IcaConfig(seed=seed))
    else:
        result = ba_optimize(cost_fn, args.dim, BaConfig(seed=seed))
    for iteration, cost in result.history:
        print(f"iter {iteration:3d}  best_cost {cost:.6f}")
    print(
        f"{args.optimizer} on {args.function} (d={args.dim}, seed={seed}): "
        f"best_cost={result.best_cost:.6f} evaluations={result.n_evaluations}"
    )
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_bench_opt(args)
    except _UsageError as exc:
        print(f"wrapfs: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, OptimizerConfigError, UnknownHyperparameterError) as exc:
        print(f"wrapfs: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ExperimentIOError, DataError, OSError) as exc:
        print(f"wrapfs: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
