"""Nine binary classifiers behind a single train/predict interface."""

from __future__ import annotations

from typing import Callable

from ..data import Dataset
from .base import (
    DEFAULT_HYPERPARAMS,
    ClassifierConfig,
    ClassifierError,
    ClassifierKind,
    DegenerateTrainingError,
    TrainedModel,
    UnknownHyperparameterError,
    check_training_data,
    predict,
)
from .boost import train_adaboost
from .instance import train_knn, train_naive_bayes
from .linear import train_lda, train_linear_svm, train_logistic_regression
from .mlp import train_mlp
from .tree import train_decision_tree, train_random_forest

_TRAINERS: dict[ClassifierKind, Callable[[ClassifierConfig, Dataset], TrainedModel]] = {
    ClassifierKind.KNN: train_knn,
    ClassifierKind.NAIVE_BAYES: train_naive_bayes,
    ClassifierKind.LDA: train_lda,
    ClassifierKind.LOGISTIC_REGRESSION: train_logistic_regression,
    ClassifierKind.DECISION_TREE: train_decision_tree,
    ClassifierKind.RANDOM_FOREST: train_random_forest,
    ClassifierKind.ADABOOST: train_adaboost,
    ClassifierKind.LINEAR_SVM: train_linear_svm,
    ClassifierKind.MLP: train_mlp,
}


def train_classifier(cfg: ClassifierConfig, train: Dataset) -> TrainedModel:
    """Fit the configured classifier; deterministic given (cfg, data, seed)."""
    check_training_data(train, needs_both_classes=False)
    return _TRAINERS[cfg.kind](cfg, train)


__all__ = [
    "ClassifierConfig",
    "ClassifierError",
    "ClassifierKind",
    "DEFAULT_HYPERPARAMS",
    "DegenerateTrainingError",
    "TrainedModel",
    "UnknownHyperparameterError",
    "predict",
    "train_classifier",
]
