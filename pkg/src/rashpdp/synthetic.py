"""Synthetic regression dataset generators used by the benchmark and tests."""

from __future__ import annotations

import numpy as np

from .data import Dataset


def make_linear(n_rows: int = 500, slope: float = 2.0, intercept: float = 3.0,
                n_noise_features: int = 2, noise: float = 0.0, seed: int = 0,
                name: str = "linear") -> Dataset:
    """y = slope * x1 + intercept, plus inert extra features and optional noise."""
    rng = np.random.default_rng(seed)
    p = 1 + n_noise_features
    X = rng.uniform(-5.0, 5.0, size=(n_rows, p))
    y = slope * X[:, 0] + intercept
    if noise > 0:
        y = y + rng.normal(0.0, noise, size=n_rows)
    return Dataset(
        name=name,
        features=X,
        feature_names=tuple(f"x{i + 1}" for i in range(p)),
        target=y,
        target_name="y",
    )


def make_friedman(n_rows: int = 1000, noise: float = 1.0, seed: int = 0,
                  name: str = "friedman") -> Dataset:
    """Nonlinear benchmark: 10 uniform features, 5 informative.

    y = 10*sin(pi*x1*x2) + 20*(x3 - 0.5)^2 + 10*x4 + 5*x5 + Gaussian noise.
    """
    rng = np.random.default_rng(seed)
    X = rng.uniform(0.0, 1.0, size=(n_rows, 10))
    y = (
        10.0 * np.sin(np.pi * X[:, 0] * X[:, 1])
        + 20.0 * (X[:, 2] - 0.5) ** 2
        + 10.0 * X[:, 3]
        + 5.0 * X[:, 4]
    )
    if noise > 0:
        y = y + rng.normal(0.0, noise, size=n_rows)
    return Dataset(
        name=name,
        features=X,
        feature_names=tuple(f"x{i + 1}" for i in range(10)),
        target=y,
        target_name="y",
    )
