"""Wrapper feature selection: population optimizers searching binary feature
masks scored by cross-validated classifier accuracy."""

from .classifiers import ClassifierConfig, ClassifierKind, predict, train_classifier
from .data import Dataset, FeatureMask, ScalerParams
from .evaluation import ConfusionMatrix, CvResult, MetricsReport
from .metaheuristics import BaConfig, IcaConfig, OptimizeResult
from .pipeline import ExperimentConfig, ExperimentReport, emit_report, run_experiment

__version__ = "0.1.0"

__all__ = [
    "BaConfig",
    "ClassifierConfig",
    "ClassifierKind",
    "ConfusionMatrix",
    "CvResult",
    "Dataset",
    "ExperimentConfig",
    "ExperimentReport",
    "FeatureMask",
    "IcaConfig",
    "MetricsReport",
    "OptimizeResult",
    "ScalerParams",
    "emit_report",
    "predict",
    "run_experiment",
    "train_classifier",
]
