"""Shared fixtures and stub models for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from rashpdp.data import Dataset
from rashpdp.learners import TrainedModel


class ConstantPredictor:
    """Predicts one fixed value for every row."""

    def __init__(self, value: float):
        self.value = float(value)

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        return np.full(np.asarray(X).shape[0], self.value)


class LinearPredictor:
    """Predicts coef . row + intercept."""

    def __init__(self, coef, intercept: float = 0.0):
        self.coef = np.asarray(coef, dtype=np.float64)
        self.intercept = float(intercept)

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=np.float64) @ self.coef + self.intercept


def stub_model(model_id: int, score: float, predictor=None) -> TrainedModel:
    return TrainedModel(
        id=model_id,
        family="DecisionTree",
        hyperparameters={},
        predictor=predictor if predictor is not None else ConstantPredictor(0.0),
        score=float(score),
    )


def stub_pool(scores) -> list[TrainedModel]:
    return [stub_model(i, s) for i, s in enumerate(scores)]


@pytest.fixture
def tiny_dataset() -> Dataset:
    rng = np.random.default_rng(7)
    X = rng.uniform(-1.0, 1.0, size=(40, 3))
    y = 1.5 * X[:, 0] - 0.5 * X[:, 1] + 0.1 * rng.normal(size=40)
    return Dataset(
        name="tiny",
        features=X,
        feature_names=("a", "b", "c"),
        target=y,
        target_name="y",
    )
