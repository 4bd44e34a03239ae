"""Imperialist-competitive search over [0, 1]^d.

Empires of candidate solutions contract toward their imperialists
(assimilation), occasionally re-randomize (revolution), trade places with a
better colony (exchange), and compete for the weakest empire's weakest colony
until the iteration budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

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
class IcaConfig:
    n_pop: int = 10
    n_imp: int = 5
    max_it: int = 30
    beta: float = 2.0  # assimilation coefficient
    zeta: float = 0.1  # weight of colony mean cost in an empire's total cost
    phi: float = math.pi / 4  # deviation half-range, radians
    revolution_rate: float = 0.1
    seed: int = 0

    def validate(self) -> None:
        if self.n_pop < 2:
            raise OptimizerConfigError(f"n_pop must be >= 2, got {self.n_pop}")
        if not 0 < self.n_imp < self.n_pop:
            raise OptimizerConfigError(
                f"n_imp must be in [1, n_pop), got {self.n_imp} with n_pop={self.n_pop}"
            )
        if self.max_it < 1:
            raise OptimizerConfigError(f"max_it must be >= 1, got {self.max_it}")
        if not 1.0 <= self.beta <= 2.0:
            raise OptimizerConfigError(f"beta must be in [1, 2], got {self.beta}")
        if not 0.0 < self.zeta < 1.0:
            raise OptimizerConfigError(f"zeta must be in (0, 1), got {self.zeta}")
        if self.phi < 0 or self.phi >= math.pi / 2:
            raise OptimizerConfigError(f"phi must be in [0, pi/2), got {self.phi}")
        if not 0.0 <= self.revolution_rate <= 1.0:
            raise OptimizerConfigError(
                f"revolution_rate must be in [0, 1], got {self.revolution_rate}"
            )


def ica_imperialist_power(costs: Sequence[float] | np.ndarray) -> np.ndarray:
    """Normalized power of each imperialist: worst-cost gap over the gap total.

    All-equal costs would give 0/0, so that case returns the uniform vector.
    """
    c = np.asarray(costs, dtype=np.float64)
    if c.size == 0:
        raise OptimizerConfigError("costs must be non-empty")
    gaps = c.max() - c
    total = gaps.sum()
    if total == 0.0:
        return np.full(c.size, 1.0 / c.size)
    return np.abs(gaps / total)


def ica_total_cost(
    imperialist_cost: float, colony_costs: Sequence[float] | np.ndarray, zeta: float
) -> float:
    """Empire cost: imperialist cost plus zeta times the colonies' mean cost."""
    cc = np.asarray(colony_costs, dtype=np.float64)
    if cc.size == 0:
        return float(imperialist_cost)
    return float(imperialist_cost + zeta * cc.mean())


def ica_possession_probability(total_costs: Sequence[float] | np.ndarray) -> np.ndarray:
    """Chance of each empire winning a contested colony (same normalization
    as the imperialist power, applied to empire total costs)."""
    return ica_imperialist_power(total_costs)


def _allocate_colony_counts(powers: np.ndarray, n_col: int) -> np.ndarray:
    """Initial colonies per empire: round(power * n_col) with the rounding
    residue credited to the strongest imperialist."""
    counts = np.rint(powers * n_col).astype(int)
    counts[int(np.argmax(powers))] += n_col - counts.sum()
    while counts.min() < 0:
        deficit = -counts.min()
        counts[int(np.argmin(counts))] += deficit
        counts[int(np.argmax(counts))] -= deficit
    return counts


@dataclass(eq=False)
class Empire:
    imperialist: np.ndarray
    imperialist_cost: float
    colonies: list[np.ndarray] = field(default_factory=list)
    colony_costs: list[float] = field(default_factory=list)

    def total_cost(self, zeta: float) -> float:
        return ica_total_cost(self.imperialist_cost, self.colony_costs, zeta)

    def exchange_if_better(self) -> None:
        """Swap the imperialist with its best colony when that colony is cheaper."""
        if not self.colonies:
            return
        i = int(np.argmin(self.colony_costs))
        if self.colony_costs[i] < self.imperialist_cost:
            self.imperialist, self.colonies[i] = self.colonies[i], self.imperialist
            self.imperialist_cost, self.colony_costs[i] = (
                self.colony_costs[i],
                self.imperialist_cost,
            )


class IcaRun:
    """Mutable run state; `step()` advances one iteration."""

    def __init__(
        self,
        cost_fn: CostFn,
        d: int,
        cfg: IcaConfig,
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

        positions = self.rng.random((cfg.n_pop, d))
        costs = np.array([self._evaluate(p) for p in positions])
        order = np.argsort(costs, kind="stable")
        imp_costs = costs[order[: cfg.n_imp]]
        powers = ica_imperialist_power(imp_costs)
        counts = _allocate_colony_counts(powers, cfg.n_pop - cfg.n_imp)
        self.empires: list[Empire] = []
        cursor = cfg.n_imp
        for k in range(cfg.n_imp):
            empire = Empire(positions[order[k]].copy(), float(imp_costs[k]))
            for j in range(cursor, cursor + counts[k]):
                empire.colonies.append(positions[order[j]].copy())
                empire.colony_costs.append(float(costs[order[j]]))
            cursor += counts[k]
            self.empires.append(empire)
        self.history.append((0, self.tracker.cost))

    def _evaluate(self, position: np.ndarray) -> float:
        cost = float(self.cost_fn(position))
        self.n_evaluations += 1
        self.tracker.offer(position, cost)
        return cost

    def _assimilate(self, empire: Empire) -> None:
        cfg = self.cfg
        for i, colony in enumerate(empire.colonies):
            direction = empire.imperialist - colony
            step = self.rng.random(self.d) * cfg.beta * direction
            theta = self.rng.uniform(-cfg.phi, cfg.phi, self.d)
            # A per-coordinate stand-in for rotating the move by theta.
            jitter = np.tan(theta) * np.linalg.norm(step) / math.sqrt(self.d)
            moved = clamp01(colony + step + jitter)
            if self.rng.random() < cfg.revolution_rate:
                moved = self.rng.random(self.d)  # revolution: fresh random position
            empire.colonies[i] = moved
            empire.colony_costs[i] = self._evaluate(moved)

    def _compete(self) -> None:
        if len(self.empires) < 2:
            return
        tcs = np.array([e.total_cost(self.cfg.zeta) for e in self.empires])
        weakest = int(np.argmax(tcs))
        if not self.empires[weakest].colonies:
            return
        probs = ica_possession_probability(tcs)
        draws = self.rng.random(len(self.empires))
        winner = int(np.argmax(probs - draws))
        if winner == weakest:
            return
        loser = self.empires[weakest]
        j = int(np.argmax(loser.colony_costs))
        colony = loser.colonies.pop(j)
        cost = loser.colony_costs.pop(j)
        self.empires[winner].colonies.append(colony)
        self.empires[winner].colony_costs.append(cost)
        self.empires[winner].exchange_if_better()

    def _eliminate_empty(self) -> None:
        while len(self.empires) > 1:
            empty = next((k for k, e in enumerate(self.empires) if not e.colonies), None)
            if empty is None:
                return
            fallen = self.empires.pop(empty)
            tcs = [e.total_cost(self.cfg.zeta) for e in self.empires]
            host = self.empires[int(np.argmin(tcs))]
            host.colonies.append(fallen.imperialist)
            host.colony_costs.append(fallen.imperialist_cost)
            host.exchange_if_better()

    def step(self) -> None:
        self.iteration += 1
        for empire in self.empires:
            self._assimilate(empire)
            empire.exchange_if_better()
        self._compete()
        self._eliminate_empty()
        self.history.append((self.iteration, self.tracker.cost))

    def run(self) -> OptimizeResult:
        while self.iteration < self.cfg.max_it:
            self.step()
        return self.tracker.result(self.history, self.n_evaluations)


def ica_optimize(
    cost_fn: CostFn, d: int, cfg: IcaConfig, tie_break: Optional[TieBreak] = None
) -> OptimizeResult:
    """Run the full imperialist-competitive loop and return the best ever seen."""
    return IcaRun(cost_fn, d, cfg, tie_break).run()
