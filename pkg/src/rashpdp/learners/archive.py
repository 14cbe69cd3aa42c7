"""Versioned JSON archive for trained model pools (--save-pool/--load-pool)."""

from __future__ import annotations

import json
import os

from .boosting import GradientBoostingRegression
from .forest import RandomForestRegression
from .knn import KNearestNeighborsRegression
from .linear import RidgeRegression
from .pool import (
    DECISION_TREE,
    GRADIENT_BOOSTING,
    K_NEAREST_NEIGHBORS,
    LINEAR_RIDGE,
    RANDOM_FOREST,
    TrainedModel,
)
from .tree import RegressionTree

ARCHIVE_FORMAT = "rashpdp-pool"
ARCHIVE_VERSION = 1

_FAMILY_CLASSES = {
    LINEAR_RIDGE: RidgeRegression,
    DECISION_TREE: RegressionTree,
    RANDOM_FOREST: RandomForestRegression,
    GRADIENT_BOOSTING: GradientBoostingRegression,
    K_NEAREST_NEIGHBORS: KNearestNeighborsRegression,
}


def save_pool(pool: list[TrainedModel], path: str | os.PathLike[str]) -> None:
    """Serialize a pool to a self-describing JSON archive."""
    payload = {
        "format": ARCHIVE_FORMAT,
        "version": ARCHIVE_VERSION,
        "models": [
            {
                "id": m.id,
                "family": m.family,
                "hyperparameters": m.hyperparameters,
                "score": m.score,
                "state": m.predictor.get_state(),
            }
            for m in pool
        ],
    }
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)


def load_pool(path: str | os.PathLike[str]) -> list[TrainedModel]:
    """Restore a pool saved by save_pool; predictions match the original."""
    with open(os.fspath(path), "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != ARCHIVE_FORMAT:
        raise ValueError(f"{path} is not a model-pool archive")
    if payload.get("version") != ARCHIVE_VERSION:
        raise ValueError(
            f"unsupported pool archive version {payload.get('version')!r} "
            f"(expected {ARCHIVE_VERSION})"
        )
    pool = []
    for entry in payload["models"]:
        family = entry["family"]
        if family not in _FAMILY_CLASSES:
            raise ValueError(f"unknown model family '{family}' in archive {path}")
        predictor = _FAMILY_CLASSES[family].from_state(entry["state"])
        pool.append(
            TrainedModel(
                id=int(entry["id"]),
                family=family,
                hyperparameters=dict(entry["hyperparameters"]),
                predictor=predictor,
                score=float(entry["score"]),
            )
        )
    return pool
