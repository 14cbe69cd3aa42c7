"""Model pool: randomized search over a fixed zoo of regression families."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..data import Dataset, Split
from .boosting import GradientBoostingRegression
from .forest import RandomForestRegression
from .knn import KNearestNeighborsRegression
from .linear import RidgeRegression
from .tree import RegressionTree

LINEAR_RIDGE = "LinearRidge"
DECISION_TREE = "DecisionTree"
RANDOM_FOREST = "RandomForest"
GRADIENT_BOOSTING = "GradientBoosting"
K_NEAREST_NEIGHBORS = "KNearestNeighbors"

# Training cycles through families in this fixed order, so any pool of five
# or more models contains every family.
FAMILIES = (
    LINEAR_RIDGE,
    DECISION_TREE,
    RANDOM_FOREST,
    GRADIENT_BOOSTING,
    K_NEAREST_NEIGHBORS,
)

DEFAULT_MAX_MODELS = 20
DEFAULT_MAX_RUNTIME_SECS = 360.0


@dataclass(frozen=True)
class SearchBudget:
    """Caps on the randomized search: model count, wall clock, and seed."""

    max_models: int = DEFAULT_MAX_MODELS
    max_runtime_secs: float = DEFAULT_MAX_RUNTIME_SECS
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_models < 1:
            raise ValueError(f"max_models must be >= 1, got {self.max_models}")
        if not self.max_runtime_secs > 0:
            raise ValueError(f"max_runtime_secs must be > 0, got {self.max_runtime_secs}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class TrainedModel:
    """A fitted regressor with its provenance and holdout score.

    `predictor` is any object with a deterministic `predict_many(X)`; the
    stored score is the RMSE of its predictions on the split's test rows and
    can be recomputed from the model state alone.
    """

    id: int
    family: str
    hyperparameters: dict[str, Any] = field(compare=False)
    predictor: Any = field(compare=False, repr=False)
    score: float = 0.0

    def predict(self, row: np.ndarray) -> float:
        return float(self.predictor.predict_many(np.asarray(row, dtype=np.float64)[None, :])[0])

    def predict_many(self, rows: np.ndarray) -> np.ndarray:
        return self.predictor.predict_many(rows)


def rmse(predictions: np.ndarray, truth: np.ndarray) -> float:
    """Root mean squared error of `predictions` against `truth`."""
    predictions = np.asarray(predictions, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if predictions.shape != truth.shape or predictions.ndim != 1:
        raise ValueError(
            f"length mismatch: predictions {predictions.shape} vs truth {truth.shape}"
        )
    if predictions.size == 0:
        raise ValueError("rmse of empty vectors is undefined")
    return float(np.sqrt(np.mean((predictions - truth) ** 2)))


def predict_batch(model: TrainedModel, rows: np.ndarray) -> np.ndarray:
    """Predict every row; output is finite and matches the row count."""
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2:
        raise ValueError(f"rows must be a 2-d matrix, got shape {rows.shape}")
    if rows.shape[0] == 0:
        return np.empty(0, dtype=np.float64)
    out = np.asarray(model.predict_many(rows), dtype=np.float64)
    if out.shape != (rows.shape[0],):
        raise ValueError(f"predictor returned shape {out.shape} for {rows.shape[0]} rows")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"model {model.id} ({model.family}) produced non-finite predictions")
    return out


def _draw_hyperparameters(family: str, rng: np.random.Generator) -> dict[str, Any]:
    if family == LINEAR_RIDGE:
        return {"alpha": float(10.0 ** rng.uniform(-6.0, 1.0))}
    if family == DECISION_TREE:
        return {
            "max_depth": int(rng.integers(2, 13)),
            "min_samples_leaf": int(rng.integers(1, 21)),
        }
    if family == RANDOM_FOREST:
        return {
            "n_estimators": int(rng.integers(50, 301)),
            "max_features": str(rng.choice(["sqrt", "third"])),
        }
    if family == GRADIENT_BOOSTING:
        return {
            "n_estimators": int(rng.integers(50, 501)),
            "learning_rate": float(rng.uniform(0.01, 0.3)),
            "max_depth": int(rng.integers(2, 7)),
        }
    if family == K_NEAREST_NEIGHBORS:
        return {
            "n_neighbors": int(rng.integers(3, 26)),
            "weights": str(rng.choice(["uniform", "inverse_distance"])),
        }
    raise ValueError(f"unknown model family '{family}'")


def _fit_family(family: str, hp: dict[str, Any], X: np.ndarray, y: np.ndarray,
                fit_seed: int) -> Any:
    if family == LINEAR_RIDGE:
        return RidgeRegression(alpha=hp["alpha"]).fit(X, y)
    if family == DECISION_TREE:
        return RegressionTree(
            max_depth=hp["max_depth"], min_samples_leaf=hp["min_samples_leaf"]
        ).fit(X, y)
    if family == RANDOM_FOREST:
        return RandomForestRegression(
            n_estimators=hp["n_estimators"], max_features=hp["max_features"], seed=fit_seed
        ).fit(X, y)
    if family == GRADIENT_BOOSTING:
        return GradientBoostingRegression(
            n_estimators=hp["n_estimators"],
            learning_rate=hp["learning_rate"],
            max_depth=hp["max_depth"],
        ).fit(X, y)
    if family == K_NEAREST_NEIGHBORS:
        return KNearestNeighborsRegression(
            n_neighbors=min(hp["n_neighbors"], X.shape[0]), weights=hp["weights"]
        ).fit(X, y)
    raise ValueError(f"unknown model family '{family}'")


def train_pool(ds: Dataset, sp: Split, budget: SearchBudget) -> list[TrainedModel]:
    """Train up to `budget.max_models` models under the wall-clock cap.

    Families rotate in FAMILIES order; each model's hyperparameters and any
    fitting randomness come from a stream derived from (budget.seed, model
    index), so the pool is exactly reproducible apart from the wall-clock
    cutoff. The clock is only checked between fits: a fit in progress always
    runs to completion and completed models are kept.
    """
    train_idx = np.asarray(sp.train_indices, dtype=np.intp)
    test_idx = np.asarray(sp.test_indices, dtype=np.intp)
    X_train = ds.features[train_idx]
    y_train = ds.target[train_idx]
    X_test = ds.features[test_idx]
    y_test = ds.target[test_idx]

    started = time.monotonic()
    pool: list[TrainedModel] = []
    for i in range(budget.max_models):
        if not math.isinf(budget.max_runtime_secs):
            if time.monotonic() - started > budget.max_runtime_secs:
                break
        family = FAMILIES[i % len(FAMILIES)]
        rng = np.random.default_rng(np.random.SeedSequence(budget.seed, spawn_key=(i,)))
        hp = _draw_hyperparameters(family, rng)
        fit_seed = int(rng.integers(0, 2**63))
        predictor = _fit_family(family, hp, X_train, y_train, fit_seed)
        score = rmse(predictor.predict_many(X_test), y_test)
        pool.append(
            TrainedModel(id=i, family=family, hyperparameters=hp,
                         predictor=predictor, score=score)
        )
    if not pool:
        raise RuntimeError(
            f"no model completed within max_runtime_secs={budget.max_runtime_secs}"
        )
    return pool
