"""Gradient boosting with squared-error loss over shallow CART trees."""

from __future__ import annotations

import numpy as np

from .tree import RegressionTree

BOOSTING_MIN_SAMPLES_LEAF = 5


class GradientBoostingRegression:
    """Stagewise additive model: mean prediction plus shrunken residual trees.

    Final predictions are clamped to the observed training-target range so
    boosted outputs, like plain tree averages, never extrapolate beyond the
    targets seen in training.
    """

    def __init__(self, n_estimators: int = 100, learning_rate: float = 0.1, max_depth: int = 3):
        if n_estimators < 1:
            raise ValueError(f"n_estimators must be >= 1, got {n_estimators}")
        if not 0.0 < learning_rate <= 1.0:
            raise ValueError(f"learning_rate must be in (0, 1], got {learning_rate}")
        self.n_estimators = int(n_estimators)
        self.learning_rate = float(learning_rate)
        self.max_depth = int(max_depth)
        self.init_: float = 0.0
        self.y_min_: float = 0.0
        self.y_max_: float = 0.0
        self.trees_: list[RegressionTree] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GradientBoostingRegression":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self.init_ = float(y.mean())
        self.y_min_ = float(y.min())
        self.y_max_ = float(y.max())
        self.trees_ = []
        pred = np.full(y.shape, self.init_)
        for _ in range(self.n_estimators):
            residual = y - pred
            tree = RegressionTree(
                max_depth=self.max_depth,
                min_samples_leaf=BOOSTING_MIN_SAMPLES_LEAF,
            )
            tree.fit(X, residual)
            pred += self.learning_rate * tree.predict_many(X)
            self.trees_.append(tree)
        return self

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        if not self.trees_:
            raise ValueError("model is not fitted")
        X = np.asarray(X, dtype=np.float64)
        pred = np.full(X.shape[0], self.init_)
        for tree in self.trees_:
            pred += self.learning_rate * tree.predict_many(X)
        return np.clip(pred, self.y_min_, self.y_max_)

    def get_state(self) -> dict:
        return {
            "n_estimators": self.n_estimators,
            "learning_rate": self.learning_rate,
            "max_depth": self.max_depth,
            "init": self.init_,
            "y_min": self.y_min_,
            "y_max": self.y_max_,
            "trees": [tree.get_state() for tree in self.trees_],
        }

    @classmethod
    def from_state(cls, state: dict) -> "GradientBoostingRegression":
        model = cls(
            n_estimators=state["n_estimators"],
            learning_rate=state["learning_rate"],
            max_depth=state["max_depth"],
        )
        model.init_ = float(state["init"])
        model.y_min_ = float(state["y_min"])
        model.y_max_ = float(state["y_max"])
        model.trees_ = [RegressionTree.from_state(s) for s in state["trees"]]
        return model
