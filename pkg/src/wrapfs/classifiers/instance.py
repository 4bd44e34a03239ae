"""Instance- and density-based learners: k-nearest neighbours and Gaussian naive Bayes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from .base import ClassifierConfig, ClassifierError, ClassifierKind, TrainedModel


@dataclass(frozen=True, eq=False)
class KnnModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    k: int
    train_x: np.ndarray
    train_y: np.ndarray

    def _predict(self, features: np.ndarray) -> np.ndarray:
        # Squared Euclidean distances via the expansion ||a-b||^2 = a.a + b.b - 2ab.
        a2 = np.sum(features**2, axis=1)[:, None]
        b2 = np.sum(self.train_x**2, axis=1)[None, :]
        d2 = a2 + b2 - 2.0 * (features @ self.train_x.T)
        k = min(self.k, self.train_x.shape[0])
        # Stable sort keeps neighbour order deterministic under distance ties.
        order = np.argsort(d2, axis=1, kind="stable")[:, :k]
        votes = self.train_y[order]
        pos = votes.sum(axis=1)
        out = np.where(pos * 2 > k, 1, 0).astype(np.int64)
        ties = pos * 2 == k
        if np.any(ties):
            # Tied vote: defer to the single nearest neighbour.
            out[ties] = votes[ties, 0]
        return out


def train_knn(cfg: ClassifierConfig, train: Dataset) -> KnnModel:
    k = cfg.iparam("k")
    if k < 1:
        raise ClassifierError(f"k must be >= 1, got {k}")
    return KnnModel(
        kind=ClassifierKind.KNN,
        n_features_expected=train.n_features,
        k=k,
        train_x=train.features,
        train_y=train.labels,
    )


@dataclass(frozen=True, eq=False)
class NaiveBayesModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    classes: np.ndarray
    log_priors: np.ndarray
    means: np.ndarray  # (n_classes, d)
    variances: np.ndarray  # (n_classes, d), floored

    def _predict(self, features: np.ndarray) -> np.ndarray:
        # log N(x | mu, var), summed over features, plus the class log-prior.
        ll = np.empty((features.shape[0], self.classes.size))
        for ci in range(self.classes.size):
            var = self.variances[ci]
            diff = features - self.means[ci]
            ll[:, ci] = self.log_priors[ci] - 0.5 * np.sum(
                np.log(2.0 * np.pi * var) + diff**2 / var, axis=1
            )
        return self.classes[np.argmax(ll, axis=1)].astype(np.int64)


def train_naive_bayes(cfg: ClassifierConfig, train: Dataset) -> NaiveBayesModel:
    classes = np.unique(train.labels)
    x, y = train.features, train.labels
    means = np.vstack([x[y == c].mean(axis=0) for c in classes])
    variances = np.vstack([x[y == c].var(axis=0) for c in classes])
    # Floor variances relative to the largest overall feature variance so a
    # constant-within-class feature cannot zero out a likelihood.
    overall = x.var(axis=0)
    floor = cfg.param("var_floor_ratio") * float(overall.max()) if overall.size else 0.0
    if floor <= 0.0:
        floor = 1e-12
    variances = np.maximum(variances, floor)
    priors = np.array([(y == c).mean() for c in classes])
    return NaiveBayesModel(
        kind=ClassifierKind.NAIVE_BAYES,
        n_features_expected=train.n_features,
        classes=classes,
        log_priors=np.log(priors),
        means=means,
        variances=variances,
    )
