"""k-nearest-neighbors regression on internally standardized features."""

from __future__ import annotations

import numpy as np

_QUERY_CHUNK = 2048


class KNearestNeighborsRegression:
    """Neighbor averaging with uniform or inverse-distance weights.

    Features are standardized with training statistics before distance
    computation. Queries that coincide exactly with training rows average
    the zero-distance rows under inverse-distance weighting.
    """

    def __init__(self, n_neighbors: int = 5, weights: str = "uniform"):
        if n_neighbors < 1:
            raise ValueError(f"n_neighbors must be >= 1, got {n_neighbors}")
        if weights not in ("uniform", "inverse_distance"):
            raise ValueError(f"unknown weights mode '{weights}'")
        self.n_neighbors = int(n_neighbors)
        self.weights = str(weights)
        self.center_: np.ndarray | None = None
        self.scale_: np.ndarray | None = None
        self.train_z_: np.ndarray | None = None
        self.train_y_: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNearestNeighborsRegression":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self.center_ = X.mean(axis=0)
        scale = X.std(axis=0)
        scale[scale == 0.0] = 1.0
        self.scale_ = scale
        self.train_z_ = (X - self.center_) / scale
        self.train_y_ = y.copy()
        return self

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        if self.train_z_ is None:
            raise ValueError("model is not fitted")
        X = np.asarray(X, dtype=np.float64)
        k = min(self.n_neighbors, self.train_z_.shape[0])
        out = np.empty(X.shape[0], dtype=np.float64)
        train_sq = np.sum(self.train_z_ * self.train_z_, axis=1)
        for start in range(0, X.shape[0], _QUERY_CHUNK):
            zq = (X[start:start + _QUERY_CHUNK] - self.center_) / self.scale_
            d2 = np.maximum(
                zq @ self.train_z_.T * -2.0 + train_sq + np.sum(zq * zq, axis=1)[:, None],
                0.0,
            )
            if k < d2.shape[1]:
                nearest = np.argpartition(d2, k - 1, axis=1)[:, :k]
            else:
                nearest = np.broadcast_to(np.arange(d2.shape[1]), (d2.shape[0], d2.shape[1]))
            rows = np.arange(d2.shape[0])[:, None]
            nd2 = d2[rows, nearest]
            ny = self.train_y_[nearest]
            if self.weights == "uniform":
                out[start:start + zq.shape[0]] = ny.mean(axis=1)
            else:
                zero = nd2 <= 0.0
                has_zero = zero.any(axis=1)
                w = np.zeros_like(nd2)
                np.divide(1.0, np.sqrt(nd2), out=w, where=~zero)
                w[zero] = 0.0
                pred = np.empty(zq.shape[0])
                nz = ~has_zero
                pred[nz] = (w[nz] * ny[nz]).sum(axis=1) / w[nz].sum(axis=1)
                if has_zero.any():
                    zcount = zero[has_zero].sum(axis=1)
                    pred[has_zero] = (ny[has_zero] * zero[has_zero]).sum(axis=1) / zcount
                out[start:start + zq.shape[0]] = pred
        return out

    def get_state(self) -> dict:
        return {
            "n_neighbors": self.n_neighbors,
            "weights": self.weights,
            "center": self.center_.tolist(),
            "scale": self.scale_.tolist(),
            "train_z": self.train_z_.tolist(),
            "train_y": self.train_y_.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "KNearestNeighborsRegression":
        model = cls(n_neighbors=state["n_neighbors"], weights=state["weights"])
        model.center_ = np.asarray(state["center"], dtype=np.float64)
        model.scale_ = np.asarray(state["scale"], dtype=np.float64)
        model.train_z_ = np.asarray(state["train_z"], dtype=np.float64)
        model.train_y_ = np.asarray(state["train_y"], dtype=np.float64)
        return model
