"""Rashomon sets: near-optimal model subsets under a multiplicative tolerance."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .learners.pool import TrainedModel

DEFAULT_EPSILON = 0.05


@dataclass(frozen=True)
class RashomonSet:
    """Models whose score is within a factor (1 + epsilon) of the best score.

    `member_ids` is ordered by ascending score with ties broken by id, so the
    best model is always first. `rss` is the member count and `rr` the member
    count divided by the pool size.
    """

    epsilon: float
    best_id: int
    threshold: float
    member_ids: tuple[int, ...]
    rss: int
    rr: float

    def __post_init__(self) -> None:
        if self.best_id not in self.member_ids:
            raise ValueError("best model must be a member of its Rashomon set")
        if self.rss != len(self.member_ids):
            raise ValueError("rss must equal the member count")
        if not 0.0 < self.rr <= 1.0:
            raise ValueError(f"rr must be in (0, 1], got {self.rr}")


def select_best(pool: list[TrainedModel]) -> int:
    """Id of the model with minimal score; ties go to the earliest-trained."""
    if not pool:
        raise ValueError("cannot select the best model from an empty pool")
    for m in pool:
        if not math.isfinite(m.score):
            raise ValueError(f"model {m.id} has non-finite score {m.score}")
    best = min(pool, key=lambda m: (m.score, m.id))
    return best.id


def form_set(pool: list[TrainedModel], epsilon: float = DEFAULT_EPSILON) -> RashomonSet:
    """Collect all models with score <= best_score * (1 + epsilon).

    The threshold is inclusive, so the best model is always a member; with a
    perfect best score of zero the set degenerates to the perfect models.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    best_id = select_best(pool)
    best_score = next(m.score for m in pool if m.id == best_id)
    threshold = best_score * (1.0 + epsilon)
    members = sorted(
        (m for m in pool if m.score <= threshold),
        key=lambda m: (m.score, m.id),
    )
    member_ids = tuple(m.id for m in members)
    return RashomonSet(
        epsilon=float(epsilon),
        best_id=best_id,
        threshold=float(threshold),
        member_ids=member_ids,
        rss=len(member_ids),
        rr=len(member_ids) / len(pool),
    )
