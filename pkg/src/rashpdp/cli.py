"""Command-line interface: explain one dataset, run a suite, or correlate a
summary table.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ConfigError, DataError
from .report import (
    RunConfig,
    config_from_mapping,
    correlate_summary,
    parse_config_file,
    run_dataset,
    run_suite,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rashpdp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    explain = sub.add_parser(
        "explain", help="profile one dataset's features over its Rashomon set"
    )
    explain.add_argument("--data", help="input CSV path")
    explain.add_argument("--target", help="target column name")
    explain.add_argument("--feature", action="append", default=None,
                         help="feature to profile (repeatable; default: all)")
    explain.add_argument("--config", help="flat key-value config file")
    explain.add_argument("--epsilon", type=float, default=None)
    explain.add_argument("--max-models", type=int, default=None)
    explain.add_argument("--max-runtime-secs", type=float, default=None)
    explain.add_argument("--test-fraction", type=float, default=None)
    explain.add_argument("--grid", type=int, default=None)
    explain.add_argument("--bootstrap", type=int, default=None)
    explain.add_argument("--alpha", type=float, default=None)
    explain.add_argument("--seed", type=int, default=None)
    explain.add_argument("--workers", type=int, default=1)
    explain.add_argument("--save-pool", help="write the trained pool archive here")
    explain.add_argument("--load-pool", help="reuse a saved pool archive instead of training")
    explain.add_argument("--out", help="output directory")

    suite = sub.add_parser("suite", help="run several datasets and correlate the results")
    suite.add_argument("--configs", required=True,
                       help="text file listing one run-config path per line")
    suite.add_argument("--workers", type=int, default=1)
    suite.add_argument("--out", required=True, help="output directory")

    correlate = sub.add_parser(
        "correlate", help="rank-correlate RR against CR in an existing summary CSV"
    )
    correlate.add_argument("--summary", required=True, help="summary CSV path")
    correlate.add_argument("--out", required=True, help="output directory")
    return parser


def _explain_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(data_path="", target_column="")
    if args.config:
        cfg = config_from_mapping(
            parse_config_file(args.config),
            base_dir=os.path.dirname(os.path.abspath(args.config)),
            defaults=cfg,
        )
    overrides: dict[str, str] = {}
    if args.data is not None:
        overrides["data"] = args.data
    if args.target is not None:
        overrides["target"] = args.target
    if args.feature:
        overrides["features"] = ",".join(args.feature)
    if args.epsilon is not None:
        overrides["epsilon"] = str(args.epsilon)
    if args.max_models is not None:
        overrides["max_models"] = str(args.max_models)
    if args.max_runtime_secs is not None:
        overrides["max_runtime_secs"] = str(args.max_runtime_secs)
    if args.test_fraction is not None:
        overrides["test_fraction"] = str(args.test_fraction)
    if args.grid is not None:
        overrides["grid"] = str(args.grid)
    if args.bootstrap is not None:
        overrides["bootstrap"] = str(args.bootstrap)
    if args.alpha is not None:
        overrides["alpha"] = str(args.alpha)
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    if args.out is not None:
        overrides["out"] = args.out
    cfg = config_from_mapping(overrides, defaults=cfg)
    if not cfg.data_path:
        raise ConfigError("--data is required (flag or config file)")
    if not cfg.target_column:
        raise ConfigError("--target is required (flag or config file)")
    if not cfg.out_dir:
        raise ConfigError("--out is required (flag or config file)")
    return cfg


def _read_suite_configs(path: str) -> list[RunConfig]:
    if not os.path.isfile(path):
        raise ConfigError(f"no such suite file: {path}")
    base = os.path.dirname(os.path.abspath(path))
    configs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            cfg_path = text if os.path.isabs(text) else os.path.join(base, text)
            cfg = config_from_mapping(
                parse_config_file(cfg_path),
                base_dir=os.path.dirname(os.path.abspath(cfg_path)),
            )
            if not cfg.data_path or not cfg.target_column:
                raise ConfigError(f"{cfg_path}: 'data' and 'target' are required")
            configs.append(cfg)
    if not configs:
        raise ConfigError(f"suite file {path} lists no configurations")
    return configs


def _run(args: argparse.Namespace) -> int:
    if args.command == "explain":
        cfg = _explain_config(args)
        row, _ = run_dataset(cfg, workers=args.workers,
                             load_pool_path=args.load_pool,
                             save_pool_path=args.save_pool)
        rr = "-" if row.rr is None else f"{row.rr:.4f}"
        cr = "-" if row.cr is None else f"{row.cr:.4f}"
        print(f"{row.dataset}: bmp={row.bmp:.6g} mss={row.mss} rss={row.rss} "
              f"rr={rr} cr={cr} -> {cfg.out_dir}")
        return EXIT_OK
    if args.command == "suite":
        configs = _read_suite_configs(args.configs)
        rows, correlation, warnings = run_suite(configs, args.out, workers=args.workers)
        print(f"suite: {len(rows)} datasets -> {args.out}")
        for warning in warnings:
            print(f"warning: {warning}", file=sys.stderr)
        if correlation is not None:
            print(f"spearman rho={correlation.rho:.4f} "
                  f"ci=[{correlation.ci_lo:.4f}, {correlation.ci_hi:.4f}] "
                  f"p={correlation.p_value:.4g} n={correlation.n_pairs}")
        return EXIT_OK
    if args.command == "correlate":
        correlation = correlate_summary(args.summary, args.out)
        print(f"spearman rho={correlation.rho:.4f} "
              f"ci=[{correlation.ci_lo:.4f}, {correlation.ci_hi:.4f}] "
              f"p={correlation.p_value:.4g} n={correlation.n_pairs}")
        return EXIT_OK
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
