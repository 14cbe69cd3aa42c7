"""CART regression tree with variance-reduction (SSE) splitting."""

from __future__ import annotations

import numpy as np


class RegressionTree:
    """Binary regression tree stored in flat arrays.

    Splits minimize the summed squared error of the two children, which is
    equivalent to maximizing variance reduction. Thresholds are midpoints
    between consecutive distinct sorted values; rows with x <= threshold go
    left. Feature scan order breaks ties, so fitting is fully deterministic
    for a given feature-candidate sequence.
    """

    def __init__(self, max_depth: int = 12, min_samples_leaf: int = 1,
                 max_features: int | None = None):
        if max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {max_depth}")
        if min_samples_leaf < 1:
            raise ValueError(f"min_samples_leaf must be >= 1, got {min_samples_leaf}")
        self.max_depth = int(max_depth)
        self.min_samples_leaf = int(min_samples_leaf)
        self.max_features = None if max_features is None else int(max_features)
        self.feature: np.ndarray | None = None
        self.threshold: np.ndarray | None = None
        self.left: np.ndarray | None = None
        self.right: np.ndarray | None = None
        self.value: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray,
            rng: np.random.Generator | None = None) -> "RegressionTree":
        """Grow the tree on (X, y); `rng` drives per-node feature subsampling."""
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        n, p = X.shape
        if self.max_features is not None and rng is None:
            raise ValueError("feature subsampling requires an rng")

        feature: list[int] = []
        threshold: list[float] = []
        left: list[int] = []
        right: list[int] = []
        value: list[float] = []

        def new_node() -> int:
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            value.append(0.0)
            return len(feature) - 1

        root = new_node()
        stack: list[tuple[int, np.ndarray, int]] = [(root, np.arange(n, dtype=np.intp), 0)]
        while stack:
            node, rows, depth = stack.pop()
            ys = y[rows]
            value[node] = float(ys.mean())
            if depth >= self.max_depth or rows.size < 2 * self.min_samples_leaf:
                continue
            node_sse = float(np.sum((ys - ys.mean()) ** 2))
            if node_sse <= 0.0:
                continue

            if self.max_features is not None and self.max_features < p:
                candidates = np.sort(rng.choice(p, size=self.max_features, replace=False))
            else:
                candidates = np.arange(p)

            best_sse = node_sse
            best_feat = -1
            best_thr = 0.0
            for f in candidates:
                xs = X[rows, f]
                order = np.argsort(xs, kind="stable")
                xs_sorted = xs[order]
                if xs_sorted[0] == xs_sorted[-1]:
                    continue
                ys_sorted = ys[order]
                cum = np.cumsum(ys_sorted)
                cumsq = np.cumsum(ys_sorted * ys_sorted)
                n_left = np.arange(1, rows.size)
                n_right = rows.size - n_left
                valid = (xs_sorted[1:] > xs_sorted[:-1])
                valid &= n_left >= self.min_samples_leaf
                valid &= n_right >= self.min_samples_leaf
                if not valid.any():
                    continue
                sse_left = cumsq[:-1] - cum[:-1] ** 2 / n_left
                sse_right = (cumsq[-1] - cumsq[:-1]) - (cum[-1] - cum[:-1]) ** 2 / n_right
                child_sse = sse_left + sse_right
                child_sse[~valid] = np.inf
                k = int(np.argmin(child_sse))
                if child_sse[k] < best_sse:
                    best_sse = float(child_sse[k])
                    best_feat = int(f)
                    best_thr = float((xs_sorted[k] + xs_sorted[k + 1]) / 2.0)
            if best_feat < 0:
                continue

            go_left = X[rows, best_feat] <= best_thr
            left_rows = rows[go_left]
            right_rows = rows[~go_left]
            # Midpoint thresholds guarantee both sides are non-empty, but a
            # degenerate float midpoint could collapse one side; bail out then.
            if left_rows.size == 0 or right_rows.size == 0:
                continue
            feature[node] = best_feat
            threshold[node] = best_thr
            lid = new_node()
            rid = new_node()
            left[node] = lid
            right[node] = rid
            stack.append((rid, right_rows, depth + 1))
            stack.append((lid, left_rows, depth + 1))

        self.feature = np.asarray(feature, dtype=np.intp)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.intp)
        self.right = np.asarray(right, dtype=np.intp)
        self.value = np.asarray(value, dtype=np.float64)
        return self

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        if self.feature is None:
            raise ValueError("tree is not fitted")
        X = np.asarray(X, dtype=np.float64)
        idx = np.zeros(X.shape[0], dtype=np.intp)
        while True:
            node_feats = self.feature[idx]
            active = np.nonzero(node_feats >= 0)[0]
            if active.size == 0:
                break
            nodes = idx[active]
            go_left = X[active, self.feature[nodes]] <= self.threshold[nodes]
            idx[active] = np.where(go_left, self.left[nodes], self.right[nodes])
        return self.value[idx]

    def get_state(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "min_samples_leaf": self.min_samples_leaf,
            "max_features": self.max_features,
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "RegressionTree":
        tree = cls(
            max_depth=state["max_depth"],
            min_samples_leaf=state["min_samples_leaf"],
            max_features=state["max_features"],
        )
        tree.feature = np.asarray(state["feature"], dtype=np.intp)
        tree.threshold = np.asarray(state["threshold"], dtype=np.float64)
        tree.left = np.asarray(state["left"], dtype=np.intp)
        tree.right = np.asarray(state["right"], dtype=np.intp)
        tree.value = np.asarray(state["value"], dtype=np.float64)
        return tree
