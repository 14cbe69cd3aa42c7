"""Ridge regression on internally standardized features."""

from __future__ import annotations

import numpy as np


class RidgeRegression:
    """Least squares with an L2 penalty on standardized coefficients.

    The intercept is unpenalized; constant columns get zero weight. With
    alpha near zero this reduces to ordinary least squares.
    """

    def __init__(self, alpha: float = 1.0):
        if alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {alpha}")
        self.alpha = float(alpha)
        self.coef_: np.ndarray | None = None
        self.intercept_: float = 0.0
        self.center_: np.ndarray | None = None
        self.scale_: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RidgeRegression":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self.center_ = X.mean(axis=0)
        scale = X.std(axis=0)
        scale[scale == 0.0] = 1.0
        self.scale_ = scale
        Z = (X - self.center_) / scale
        y_mean = y.mean()
        gram = Z.T @ Z + self.alpha * np.eye(X.shape[1])
        self.coef_ = np.linalg.solve(gram, Z.T @ (y - y_mean))
        self.intercept_ = float(y_mean)
        return self

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        if self.coef_ is None:
            raise ValueError("model is not fitted")
        Z = (np.asarray(X, dtype=np.float64) - self.center_) / self.scale_
        return Z @ self.coef_ + self.intercept_

    def get_state(self) -> dict:
        return {
            "alpha": self.alpha,
            "coef": self.coef_.tolist(),
            "intercept": self.intercept_,
            "center": self.center_.tolist(),
            "scale": self.scale_.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "RidgeRegression":
        model = cls(alpha=state["alpha"])
        model.coef_ = np.asarray(state["coef"], dtype=np.float64)
        model.intercept_ = float(state["intercept"])
        model.center_ = np.asarray(state["center"], dtype=np.float64)
        model.scale_ = np.asarray(state["scale"], dtype=np.float64)
        return model
