"""Shared optimizer machinery: positions, binarization, and best tracking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ..data import FeatureMask

#: A search position is a length-d vector of coordinates in [0, 1].
CostFn = Callable[[np.ndarray], float]
#: Optional tie score (lower preferred) applied only on exact cost equality.
TieBreak = Callable[[np.ndarray], float]


class OptimizerConfigError(ValueError):
    """Invalid optimizer configuration, raised before any cost evaluation."""


def binarize_position(coords: Sequence[float] | np.ndarray) -> FeatureMask:
    """Threshold at 0.5: bit j is set iff coords[j] >= 0.5."""
    arr = np.asarray(coords, dtype=np.float64)
    return FeatureMask(tuple(bool(b) for b in arr >= 0.5))


def clamp01(coords: np.ndarray) -> np.ndarray:
    return np.clip(coords, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class OptimizeResult:
    best_position: np.ndarray
    best_mask: FeatureMask
    best_cost: float
    history: tuple[tuple[int, float], ...]
    n_evaluations: int


class BestTracker:
    """Keeps the lowest-cost position seen; an optional tie-break score
    (fewer-is-better) decides between candidates of exactly equal cost."""

    def __init__(self, tie_break: Optional[TieBreak] = None):
        self._tie_break = tie_break
        self.position: np.ndarray | None = None
        self.cost = np.inf
        self._tie_score = np.inf

    def offer(self, position: np.ndarray, cost: float) -> None:
        if cost > self.cost:
            return
        if cost == self.cost:
            if self._tie_break is None:
                return
            score = self._tie_break(position)
            if score >= self._tie_score:
                return
            self._tie_score = score
        elif self._tie_break is not None:
            self._tie_score = self._tie_break(position)
        self.position = position.copy()
        self.cost = float(cost)

    def result(self, history: list[tuple[int, float]], n_evaluations: int) -> OptimizeResult:
        assert self.position is not None, "no candidate was ever offered"
        return OptimizeResult(
            best_position=self.position,
            best_mask=binarize_position(self.position),
            best_cost=self.cost,
            history=tuple(history),
            n_evaluations=n_evaluations,
        )
