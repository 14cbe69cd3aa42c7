"""Pipeline orchestration: single-dataset runs, suites, and summary analysis."""

from __future__ import annotations

import csv
import json
import os
import re
from dataclasses import dataclass, replace

from .data import load_csv, split
from .errors import ConfigError, DataError
from .learners.archive import load_pool, save_pool
from .learners.pool import SearchBudget, train_pool
from .metrics import CorrelationResult, compute_metrics, spearman
from .pdp import rashomon_profile, write_profile_csv
from .rashomon import form_set
from .seeding import ROLE_POOL, ROLE_SPLIT, derive_seed
from .svgplot import emit_svg

SUMMARY_HEADER = ("dataset", "bmp", "mss", "rss", "rr", "mwci", "cr")
NA = "-"


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one dataset run; echoed into every output
    directory for provenance."""

    data_path: str
    target_column: str
    features: tuple[str, ...] = ()
    epsilon: float = 0.05
    max_models: int = 20
    max_runtime_secs: float = 360.0
    test_fraction: float = 0.25
    grid_size: int = 20
    n_boot: int = 1000
    alpha: float = 0.05
    seed: int = 42
    out_dir: str = ""

    def validate(self) -> None:
        if not self.data_path:
            raise ConfigError("data path is required")
        if not self.target_column:
            raise ConfigError("target column is required")
        if self.epsilon <= 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_models < 1:
            raise ConfigError(f"max_models must be >= 1, got {self.max_models}")
        if not self.max_runtime_secs > 0:
            raise ConfigError(f"max_runtime_secs must be > 0, got {self.max_runtime_secs}")
        if not 0.0 < self.test_fraction < 1.0:
            raise ConfigError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        if self.grid_size < 2:
            raise ConfigError(f"grid size must be >= 2, got {self.grid_size}")
        if self.n_boot < 1:
            raise ConfigError(f"bootstrap count must be >= 1, got {self.n_boot}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class SuiteSummaryRow:
    """One dataset's line in the suite summary table.

    rr/mwci/cr are None exactly when the Rashomon set is a singleton; they
    render as "-" in the CSV.
    """

    dataset: str
    bmp: float
    mss: int
    rss: int
    rr: float | None
    mwci: float | None
    cr: float | None

    def __post_init__(self) -> None:
        undefined = (self.rr is None, self.mwci is None, self.cr is None)
        if any(undefined) != all(undefined):
            raise ValueError("rr, mwci and cr must be defined or undefined together")


# ---------------------------------------------------------------------------
# config files and echo

_CONFIG_KEYS = (
    "data", "target", "features", "epsilon", "max_models", "max_runtime_secs",
    "test_fraction", "grid", "bootstrap", "alpha", "seed", "out",
)


def parse_config_file(path: str | os.PathLike[str]) -> dict[str, str]:
    """Read a flat `key = value` config file; '#' starts a comment line."""
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise ConfigError(f"no such config file: {path}")
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got '{text}'")
            key, _, value = text.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown config key '{key}'")
            values[key] = value.strip()
    return values


def config_from_mapping(values: dict[str, str], base_dir: str = "",
                        defaults: RunConfig | None = None) -> RunConfig:
    """Build a RunConfig from flat string values, resolving paths against
    `base_dir`. Unset keys fall back to `defaults`."""
    cfg = defaults if defaults is not None else RunConfig(data_path="", target_column="")

    def resolve(p: str) -> str:
        return p if os.path.isabs(p) or not base_dir else os.path.join(base_dir, p)

    updates: dict[str, object] = {}
    try:
        if "data" in values:
            updates["data_path"] = resolve(values["data"])
        if "target" in values:
            updates["target_column"] = values["target"]
        if "features" in values:
            updates["features"] = tuple(
                s.strip() for s in values["features"].split(",") if s.strip()
            )
        if "epsilon" in values:
            updates["epsilon"] = float(values["epsilon"])
        if "max_models" in values:
            updates["max_models"] = int(values["max_models"])
        if "max_runtime_secs" in values:
            updates["max_runtime_secs"] = float(values["max_runtime_secs"])
        if "test_fraction" in values:
            updates["test_fraction"] = float(values["test_fraction"])
        if "grid" in values:
            updates["grid_size"] = int(values["grid"])
        if "bootstrap" in values:
            updates["n_boot"] = int(values["bootstrap"])
        if "alpha" in values:
            updates["alpha"] = float(values["alpha"])
        if "seed" in values:
            updates["seed"] = int(values["seed"])
        if "out" in values:
            updates["out_dir"] = resolve(values["out"])
    except ValueError as exc:
        raise ConfigError(f"invalid config value: {exc}") from None
    return replace(cfg, **updates)


def write_config_echo(cfg: RunConfig, path: str | os.PathLike[str]) -> None:
    lines = [
        f"data = {cfg.data_path}",
        f"target = {cfg.target_column}",
        f"features = {','.join(cfg.features)}",
        f"epsilon = {cfg.epsilon!r}",
        f"max_models = {cfg.max_models}",
        f"max_runtime_secs = {cfg.max_runtime_secs!r}",
        f"test_fraction = {cfg.test_fraction!r}",
        f"grid = {cfg.grid_size}",
        f"bootstrap = {cfg.n_boot}",
        f"alpha = {cfg.alpha!r}",
        f"seed = {cfg.seed}",
        f"out = {cfg.out_dir}",
    ]
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _config_as_dict(cfg: RunConfig) -> dict[str, object]:
    return {
        "data": cfg.data_path,
        "target": cfg.target_column,
        "features": list(cfg.features),
        "epsilon": cfg.epsilon,
        "max_models": cfg.max_models,
        "max_runtime_secs": cfg.max_runtime_secs,
        "test_fraction": cfg.test_fraction,
        "grid": cfg.grid_size,
        "bootstrap": cfg.n_boot,
        "alpha": cfg.alpha,
        "seed": cfg.seed,
        "out": cfg.out_dir,
    }


# ---------------------------------------------------------------------------
# summary CSV

def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_summary_csv(rows: list[SuiteSummaryRow], path: str | os.PathLike[str]) -> None:
    with open(os.fspath(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for r in rows:
            writer.writerow([
                r.dataset,
                _fmt(r.bmp),
                str(r.mss),
                str(r.rss),
                NA if r.rr is None else _fmt(r.rr),
                NA if r.mwci is None else _fmt(r.mwci),
                NA if r.cr is None else _fmt(r.cr),
            ])


def read_summary_csv(path: str | os.PathLike[str]) -> list[SuiteSummaryRow]:
    """Parse a suite summary table (ours or the bundled benchmark fixture)."""
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise DataError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(h.strip() for h in next(reader))
        except StopIteration:
            raise DataError(f"empty summary file: {path}") from None
        if header != SUMMARY_HEADER:
            raise DataError(
                f"unexpected summary header {header!r}; expected {SUMMARY_HEADER!r}"
            )
        rows = []
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(SUMMARY_HEADER):
                raise DataError(f"{path}:{lineno}: expected {len(SUMMARY_HEADER)} fields")
            dataset, bmp, mss, rss, rr, mwci_s, cr = (s.strip() for s in record)
            try:
                rows.append(SuiteSummaryRow(
                    dataset=dataset,
                    bmp=float(bmp),
                    mss=int(mss),
                    rss=int(rss),
                    rr=None if rr == NA else float(rr),
                    mwci=None if mwci_s == NA else float(mwci_s),
                    cr=None if cr == NA else float(cr),
                ))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
    return rows


def correlate_rows(rows: list[SuiteSummaryRow]) -> CorrelationResult:
    """Spearman correlation between Rashomon ratio and coverage rate over the
    rows with defined metrics."""
    defined = [(r.rr, r.cr) for r in rows if r.rr is not None and r.cr is not None]
    if len(defined) < 4:
        raise ConfigError(
            f"need at least 4 rows with defined metrics for correlation, got {len(defined)}"
        )
    rr = [d[0] for d in defined]
    cr = [d[1] for d in defined]
    return spearman(rr, cr)


def _correlation_as_dict(corr: CorrelationResult) -> dict[str, object]:
    return {
        "rho": corr.rho,
        "ci_lo": corr.ci_lo,
        "ci_hi": corr.ci_hi,
        "p_value": corr.p_value,
        "n_pairs": corr.n_pairs,
    }


# ---------------------------------------------------------------------------
# runs

def _safe_filename(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def run_dataset(cfg: RunConfig, workers: int = 1,
                load_pool_path: str | None = None,
                save_pool_path: str | None = None):
    """Execute the full pipeline for one dataset.

    Writes profile CSV + SVG per feature, metrics.json, config.echo, and a
    one-row summary.csv into cfg.out_dir; returns (summary row, results by
    feature name). Output bytes are a pure function of cfg.
    """
    cfg.validate()
    if not cfg.out_dir:
        raise ConfigError("output directory is required")
    try:
        ds = load_csv(cfg.data_path, cfg.target_column)
    except DataError as exc:
        raise DataError(f"dataset '{os.path.basename(cfg.data_path)}': {exc}") from None

    for name in cfg.features:
        if name not in ds.feature_names:
            raise ConfigError(f"dataset '{ds.name}': unknown feature '{name}'")
    feature_names = list(cfg.features) if cfg.features else list(ds.feature_names)

    sp = split(ds, cfg.test_fraction, derive_seed(cfg.seed, ROLE_SPLIT))
    if load_pool_path is not None:
        pool = load_pool(load_pool_path)
    else:
        budget = SearchBudget(
            max_models=cfg.max_models,
            max_runtime_secs=cfg.max_runtime_secs,
            seed=derive_seed(cfg.seed, ROLE_POOL),
        )
        pool = train_pool(ds, sp, budget)
    if save_pool_path is not None:
        save_pool(pool, save_pool_path)

    rset = form_set(pool, cfg.epsilon)
    best = next(m for m in pool if m.id == rset.best_id)

    os.makedirs(cfg.out_dir, exist_ok=True)
    results = {}
    feature_metrics = {}
    for name in feature_names:
        j = ds.feature_index(name)
        try:
            result = rashomon_profile(
                pool, rset, ds, sp, j, cfg.grid_size,
                n_boot=cfg.n_boot, alpha=cfg.alpha, seed=cfg.seed, workers=workers,
            )
        except DataError as exc:
            raise DataError(f"dataset '{ds.name}': {exc}") from None
        results[name] = result
        feature_metrics[name] = compute_metrics(result, rset.rss)
        stem = _safe_filename(name)
        write_profile_csv(result, os.path.join(cfg.out_dir, f"profile_{stem}.csv"))
        emit_svg(
            result,
            os.path.join(cfg.out_dir, f"profile_{stem}.svg"),
            dataset_name=ds.name,
            target_name=ds.target_name,
            epsilon=cfg.epsilon,
        )

    if rset.rss > 1:
        mean_mwci = sum(m.mwci for m in feature_metrics.values()) / len(feature_metrics)
        mean_cr = sum(m.cr for m in feature_metrics.values()) / len(feature_metrics)
        row = SuiteSummaryRow(ds.name, best.score, len(pool), rset.rss,
                              rset.rr, mean_mwci, mean_cr)
    else:
        row = SuiteSummaryRow(ds.name, best.score, len(pool), rset.rss,
                              None, None, None)

    report = {
        "dataset": ds.name,
        "config": _config_as_dict(cfg),
        "pool": [
            {"id": m.id, "family": m.family, "hyperparameters": m.hyperparameters,
             "score": m.score}
            for m in pool
        ],
        "rashomon": {
            "epsilon": rset.epsilon,
            "best_id": rset.best_id,
            "threshold": rset.threshold,
            "member_ids": list(rset.member_ids),
            "rss": rset.rss,
            "rr": rset.rr,
        },
        "features": {
            name: {
                "feature_index": fm.feature_index,
                "mwci": fm.mwci if fm.defined else NA,
                "cr": fm.cr if fm.defined else NA,
                "defined": fm.defined,
                "grid_points": int(results[name].grid.size),
            }
            for name, fm in feature_metrics.items()
        },
    }
    with open(os.path.join(cfg.out_dir, "metrics.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_config_echo(cfg, os.path.join(cfg.out_dir, "config.echo"))
    write_summary_csv([row], os.path.join(cfg.out_dir, "summary.csv"))
    return row, results


def run_suite(configs: list[RunConfig], out_dir: str, workers: int = 1):
    """Run several datasets and correlate Rashomon ratio against coverage.

    Emits the suite summary CSV plus suite_report.json; the correlation is
    skipped (with a recorded warning) when fewer than four rows have defined
    metrics. Returns (rows, correlation or None, warnings).
    """
    if not configs:
        raise ConfigError("suite needs at least one dataset configuration")
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    for cfg in configs:
        sub_dir = cfg.out_dir or os.path.join(
            out_dir, _safe_filename(os.path.splitext(os.path.basename(cfg.data_path))[0])
        )
        row, _ = run_dataset(replace(cfg, out_dir=sub_dir), workers=workers)
        rows.append(row)

    warnings: list[str] = []
    correlation = None
    try:
        correlation = correlate_rows(rows)
    except ConfigError as exc:
        warnings.append(str(exc))

    write_summary_csv(rows, os.path.join(out_dir, "summary.csv"))
    report = {
        "datasets": [r.dataset for r in rows],
        "correlation": None if correlation is None else _correlation_as_dict(correlation),
        "warnings": warnings,
    }
    with open(os.path.join(out_dir, "suite_report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return rows, correlation, warnings


def correlate_summary(summary_path: str, out_dir: str) -> CorrelationResult:
    """Analysis-only mode: correlate an existing summary table (for example
    the bundled benchmark fixture) without training anything."""
    rows = read_summary_csv(summary_path)
    correlation = correlate_rows(rows)
    os.makedirs(out_dir, exist_ok=True)
    payload = {
        "summary": os.path.basename(os.fspath(summary_path)),
        "n_rows": len(rows),
        "n_defined": correlation.n_pairs,
        "correlation": _correlation_as_dict(correlation),
    }
    with open(os.path.join(out_dir, "correlation.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return correlation
