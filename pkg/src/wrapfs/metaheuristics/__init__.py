"""Population search over [0, 1]^d with threshold binarization to feature masks."""

from .bat import BaConfig, BaRun, ba_move, ba_optimize
from .benchmarks import BENCHMARKS, onemax_cost, sphere
from .common import (
    BestTracker,
    OptimizeResult,
    OptimizerConfigError,
    binarize_position,
    clamp01,
)
from .ica import (
    Empire,
    IcaConfig,
    IcaRun,
    ica_imperialist_power,
    ica_optimize,
    ica_possession_probability,
    ica_total_cost,
)

__all__ = [
    "BENCHMARKS",
    "BaConfig",
    "BaRun",
    "BestTracker",
    "Empire",
    "IcaConfig",
    "IcaRun",
    "OptimizeResult",
    "OptimizerConfigError",
    "ba_move",
    "ba_optimize",
    "binarize_position",
    "clamp01",
    "ica_imperialist_power",
    "ica_optimize",
    "ica_possession_probability",
    "ica_total_cost",
    "onemax_cost",
    "sphere",
]
