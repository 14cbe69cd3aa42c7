"""Random forest of CART regression trees."""

from __future__ import annotations

import math

import numpy as np

from .tree import RegressionTree

# Desk-scale fixed knobs; only tree count and feature subsampling are searched.
FOREST_MAX_DEPTH = 18
FOREST_MIN_SAMPLES_LEAF = 3


def _resolve_max_features(mode: str, p: int) -> int:
    if mode == "sqrt":
        return max(1, round(math.sqrt(p)))
    if mode == "third":
        return max(1, round(p / 3))
    raise ValueError(f"unknown feature subsampling mode '{mode}'")


class RandomForestRegression:
    """Bagged trees with per-node feature subsampling.

    Each tree is grown on a bootstrap row sample; its rng is derived from
    (seed, tree index) so parallel and serial fits would agree.
    """

    def __init__(self, n_estimators: int = 100, max_features: str = "sqrt", seed: int = 0):
        if n_estimators < 1:
            raise ValueError(f"n_estimators must be >= 1, got {n_estimators}")
        self.n_estimators = int(n_estimators)
        self.max_features = str(max_features)
        self.seed = int(seed)
        self.trees_: list[RegressionTree] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RandomForestRegression":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        n, p = X.shape
        mtry = _resolve_max_features(self.max_features, p)
        self.trees_ = []
        for t in range(self.n_estimators):
            rng = np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(t,)))
            rows = rng.integers(0, n, size=n)
            tree = RegressionTree(
                max_depth=FOREST_MAX_DEPTH,
                min_samples_leaf=FOREST_MIN_SAMPLES_LEAF,
                max_features=mtry,
            )
            tree.fit(X[rows], y[rows], rng=rng)
            self.trees_.append(tree)
        return self

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        if not self.trees_:
            raise ValueError("model is not fitted")
        X = np.asarray(X, dtype=np.float64)
        stacked = np.stack([tree.predict_many(X) for tree in self.trees_])
        return stacked.mean(axis=0)

    def get_state(self) -> dict:
        return {
            "n_estimators": self.n_estimators,
            "max_features": self.max_features,
            "seed": self.seed,
            "trees": [tree.get_state() for tree in self.trees_],
        }

    @classmethod
    def from_state(cls, state: dict) -> "RandomForestRegression":
        model = cls(
            n_estimators=state["n_estimators"],
            max_features=state["max_features"],
            seed=state["seed"],
        )
        model.trees_ = [RegressionTree.from_state(s) for s in state["trees"]]
        return model
