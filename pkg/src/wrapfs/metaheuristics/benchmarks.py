"""Tiny objective functions for optimizer-only convergence checks."""

from __future__ import annotations

import numpy as np

from .common import binarize_position


def sphere(position: np.ndarray) -> float:
    """Sum of squared coordinates; minimum 0 at the all-zeros corner."""
    p = np.asarray(position, dtype=np.float64)
    return float(np.sum(p * p))


def onemax_cost(position: np.ndarray) -> float:
    """Fraction of unset bits after binarization; minimum 0 at all-ones."""
    mask = binarize_position(position)
    return 1.0 - mask.n_selected / len(mask)


BENCHMARKS = {"sphere": sphere, "onemax": onemax_cost}
