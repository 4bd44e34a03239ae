"""Shared classifier types: kinds, configuration, and the trained-model base."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from ..data import Dataset


class ClassifierKind(enum.Enum):
    KNN = "knn"
    NAIVE_BAYES = "nb"
    LDA = "lda"
    LOGISTIC_REGRESSION = "lr"
    DECISION_TREE = "dt"
    RANDOM_FOREST = "rf"
    ADABOOST = "ab"
    LINEAR_SVM = "svm"
    MLP = "mlp"


#: Every hyperparameter a kind accepts, with its default value.
DEFAULT_HYPERPARAMS: dict[ClassifierKind, dict[str, float]] = {
    ClassifierKind.KNN: {"k": 5},
    ClassifierKind.NAIVE_BAYES: {"var_floor_ratio": 1e-9},
    ClassifierKind.LDA: {"ridge": 1e-6},
    ClassifierKind.LOGISTIC_REGRESSION: {
        "learning_rate": 0.1,
        "n_iter": 1000,
        "l2": 1e-4,
        "threshold": 0.5,
    },
    ClassifierKind.DECISION_TREE: {"min_samples_split": 2},
    # max_features: 0 = ceil(sqrt(d)), -1 = all, positive = that many.
    ClassifierKind.RANDOM_FOREST: {"n_trees": 100, "bootstrap": 1, "max_features": 0},
    ClassifierKind.ADABOOST: {"n_rounds": 50},
    ClassifierKind.LINEAR_SVM: {"c": 1.0, "n_epochs": 1000},
    ClassifierKind.MLP: {
        "n_hidden_layers": 5,
        "hidden_width": 10,
        "learning_rate": 0.1,
        "n_epochs": 200,
        "batch_size": 128,
        "init_scale": 0.5,
    },
}


class ClassifierError(ValueError):
    """Invalid classifier configuration or unusable training data."""


class UnknownHyperparameterError(ClassifierError):
    """A hyperparameter name the kind does not accept."""


class DegenerateTrainingError(ClassifierError):
    """Training data cannot support the requested learner."""


@dataclass(frozen=True)
class ClassifierConfig:
    """A classifier kind plus hyperparameter overrides and a seed.

    Unknown hyperparameter names are rejected at construction.
    """

    kind: ClassifierKind
    hyperparams: Mapping[str, float] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        allowed = DEFAULT_HYPERPARAMS[self.kind]
        unknown = set(self.hyperparams) - set(allowed)
        if unknown:
            raise UnknownHyperparameterError(
                f"{self.kind.value} does not accept: {', '.join(sorted(unknown))}"
            )
        merged = dict(allowed)
        merged.update({k: float(v) for k, v in self.hyperparams.items()})
        object.__setattr__(self, "hyperparams", MappingProxyType(merged))

    def param(self, name: str) -> float:
        return self.hyperparams[name]

    def iparam(self, name: str) -> int:
        return int(self.hyperparams[name])


class TrainedModel:
    """Base for fitted models; immutable once training returns."""

    kind: ClassifierKind
    n_features_expected: int

    def _predict(self, features: np.ndarray) -> np.ndarray:
        raise NotImplementedError


def predict(model: TrainedModel, features: np.ndarray) -> np.ndarray:
    """One 0/1 label per row; rejects matrices of the wrong width."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2:
        raise ClassifierError(f"features must be 2-D, got shape {x.shape}")
    if x.shape[1] != model.n_features_expected:
        raise ClassifierError(
            f"model expects {model.n_features_expected} features, got {x.shape[1]}"
        )
    if x.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    return model._predict(x)


def check_training_data(train: Dataset, needs_both_classes: bool) -> None:
    if train.n_samples == 0:
        raise ClassifierError("cannot train on an empty dataset")
    if needs_both_classes and np.unique(train.labels).size < 2:
        raise DegenerateTrainingError("degenerate training set")
