"""Bat-echolocation search over [0, 1]^d.

Each bat carries a velocity, a loudness that decays as it accepts improvements,
and a pulse rate that grows with the iteration count; low pulse rates divert
bats into a local walk around the best position scaled by the mean loudness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .common import (
    BestTracker,
    CostFn,
    OptimizeResult,
    OptimizerConfigError,
    TieBreak,
    clamp01,
)


@dataclass(frozen=True)
class BaConfig:
    n_pop: int = 10
    max_it: int = 30
    loudness_init: float = 0.9
    pulse_rate_init: float = 0.6
    f_min: float = 0.0
    f_max: float = 2.0
    alpha: float = 0.9  # loudness decay per accepted move
    gamma: float = 0.9  # pulse-rate growth constant
    seed: int = 0

    def validate(self) -> None:
        if self.n_pop < 1:
            raise OptimizerConfigError(f"n_pop must be >= 1, got {self.n_pop}")
        if self.max_it < 1:
            raise OptimizerConfigError(f"max_it must be >= 1, got {self.max_it}")
        if not 0.0 < self.loudness_init <= 1.0:
            raise OptimizerConfigError(
                f"loudness_init must be in (0, 1], got {self.loudness_init}"
            )
        if not 0.0 <= self.pulse_rate_init <= 1.0:
            raise OptimizerConfigError(
                f"pulse_rate_init must be in [0, 1], got {self.pulse_rate_init}"
            )
        if self.f_min > self.f_max:
            raise OptimizerConfigError(
                f"f_min ({self.f_min}) must be <= f_max ({self.f_max})"
            )
        if not 0.0 < self.alpha <= 1.0:
            raise OptimizerConfigError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.gamma <= 0.0:
            raise OptimizerConfigError(f"gamma must be > 0, got {self.gamma}")


def ba_move(
    bat_position: np.ndarray,
    bat_velocity: np.ndarray,
    best_position: np.ndarray,
    f_min: float,
    f_max: float,
    beta_draw: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Frequency-scaled velocity update and clamped position advance.

    f = f_min + (f_max - f_min) * beta; v' = v + (x - x*) * f; x' = x + v'.
    """
    f = f_min + (f_max - f_min) * beta_draw
    new_velocity = bat_velocity + (bat_position - best_position) * f
    new_position = clamp01(bat_position + new_velocity)
    return new_velocity, new_position


class BaRun:
    """Mutable run state; `step()` advances one iteration."""

    def __init__(
        self,
        cost_fn: CostFn,
        d: int,
        cfg: BaConfig,
        tie_break: Optional[TieBreak] = None,
    ):
        cfg.validate()
        if d < 1:
            raise OptimizerConfigError(f"dimension must be >= 1, got {d}")
        self.cost_fn = cost_fn
        self.d = d
        self.cfg = cfg
        self.rng = np.random.default_rng(cfg.seed)
        self.tracker = BestTracker(tie_break)
        self.n_evaluations = 0
        self.iteration = 0
        self.history: list[tuple[int, float]] = []

        self.positions = self.rng.random((cfg.n_pop, d))
        self.velocities = np.zeros((cfg.n_pop, d))
        self.loudness = np.full(cfg.n_pop, cfg.loudness_init)
        # Pulse rates start at the growth law's t=0 value and climb toward
        # pulse_rate_init as bats accept improvements.
        self.pulse_rate = np.zeros(cfg.n_pop)
        self.costs = np.array([self._evaluate(p) for p in self.positions])
        self.history.append((0, self.tracker.cost))

    def _evaluate(self, position: np.ndarray) -> float:
        cost = float(self.cost_fn(position))
        self.n_evaluations += 1
        self.tracker.offer(position, cost)
        return cost

    def step(self) -> None:
        cfg = self.cfg
        self.iteration += 1
        t = self.iteration
        for i in range(cfg.n_pop):
            beta = self.rng.random()
            velocity, candidate = ba_move(
                self.positions[i],
                self.velocities[i],
                self.tracker.position,
                cfg.f_min,
                cfg.f_max,
                beta,
            )
            self.velocities[i] = velocity
            if self.rng.random() > self.pulse_rate[i]:
                # Local walk around the best, scaled by the current mean loudness.
                eps = self.rng.uniform(-1.0, 1.0, self.d)
                candidate = clamp01(self.tracker.position + eps * self.loudness.mean())
            cost = self._evaluate(candidate)
            if self.rng.random() < self.loudness[i] and cost < self.costs[i]:
                self.positions[i] = candidate
                self.costs[i] = cost
                self.loudness[i] *= cfg.alpha
                self.pulse_rate[i] = cfg.pulse_rate_init * (1.0 - math.exp(-cfg.gamma * t))
        self.history.append((t, self.tracker.cost))

    def run(self) -> OptimizeResult:
        while self.iteration < self.cfg.max_it:
            self.step()
        return self.tracker.result(self.history, self.n_evaluations)


def ba_optimize(
    cost_fn: CostFn, d: int, cfg: BaConfig, tie_break: Optional[TieBreak] = None
) -> OptimizeResult:
    """Run the full bat loop and return the best position ever evaluated."""
    return BaRun(cost_fn, d, cfg, tie_break).run()
