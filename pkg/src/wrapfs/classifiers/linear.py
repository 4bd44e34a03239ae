"""Linear decision rules: LDA, logistic regression, and a soft-margin linear SVM."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from .base import ClassifierConfig, ClassifierKind, TrainedModel, check_training_data


@dataclass(frozen=True, eq=False)
class LdaModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    classes: np.ndarray
    coefs: np.ndarray  # (n_classes, d): inv(cov) @ mean_c
    intercepts: np.ndarray  # (n_classes,)

    def _predict(self, features: np.ndarray) -> np.ndarray:
        scores = features @ self.coefs.T + self.intercepts
        return self.classes[np.argmax(scores, axis=1)].astype(np.int64)


def train_lda(cfg: ClassifierConfig, train: Dataset) -> LdaModel:
    check_training_data(train, needs_both_classes=True)
    x, y = train.features, train.labels
    classes = np.unique(y)
    n, d = x.shape
    means = np.vstack([x[y == c].mean(axis=0) for c in classes])
    pooled = np.zeros((d, d))
    for ci, c in enumerate(classes):
        centered = x[y == c] - means[ci]
        pooled += centered.T @ centered
    pooled /= max(n - classes.size, 1)
    pooled += cfg.param("ridge") * np.eye(d)
    coefs = np.linalg.solve(pooled, means.T).T
    priors = np.array([(y == c).mean() for c in classes])
    intercepts = -0.5 * np.sum(coefs * means, axis=1) + np.log(priors)
    return LdaModel(
        kind=ClassifierKind.LDA,
        n_features_expected=d,
        classes=classes,
        coefs=coefs,
        intercepts=intercepts,
    )


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500.0, 500.0)))


@dataclass(frozen=True, eq=False)
class LogisticModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    weights: np.ndarray
    bias: float
    threshold: float

    def _predict(self, features: np.ndarray) -> np.ndarray:
        p = _sigmoid(features @ self.weights + self.bias)
        return (p >= self.threshold).astype(np.int64)


def train_logistic_regression(cfg: ClassifierConfig, train: Dataset) -> LogisticModel:
    check_training_data(train, needs_both_classes=True)
    x = train.features
    y = train.labels.astype(np.float64)
    n, d = x.shape
    lr = cfg.param("learning_rate")
    l2 = cfg.param("l2")
    w = np.zeros(d)
    b = 0.0
    shrink = 1.0 - lr * l2  # L2 step folded into a weight decay; bias unregularised
    step = lr / n
    xt = np.ascontiguousarray(x.T)
    for _ in range(cfg.iparam("n_iter")):
        err = _sigmoid(x @ w + b)
        err -= y
        w *= shrink
        w -= step * (xt @ err)
        b -= lr * float(err.mean())
    return LogisticModel(
        kind=ClassifierKind.LOGISTIC_REGRESSION,
        n_features_expected=d,
        weights=w,
        bias=b,
        threshold=cfg.param("threshold"),
    )


@dataclass(frozen=True, eq=False)
class LinearSvmModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    weights: np.ndarray  # includes the bias as the last component

    def _predict(self, features: np.ndarray) -> np.ndarray:
        aug = np.hstack([features, np.ones((features.shape[0], 1))])
        return (aug @ self.weights >= 0.0).astype(np.int64)


def train_linear_svm(cfg: ClassifierConfig, train: Dataset) -> LinearSvmModel:
    """Full-batch sub-gradient descent on the hinge loss, step 1/(lambda*t)."""
    check_training_data(train, needs_both_classes=True)
    x = np.hstack([train.features, np.ones((train.n_samples, 1))])
    ysign = np.where(train.labels == 1, 1.0, -1.0)
    n, d = x.shape
    lam = 1.0 / (cfg.param("c") * n)
    w = np.zeros(d)
    for t in range(1, cfg.iparam("n_epochs") + 1):
        eta = 1.0 / (lam * t)
        margins = ysign * (x @ w)
        viol = margins < 1.0
        grad = lam * w - (ysign[viol, None] * x[viol]).sum(axis=0) / n
        w -= eta * grad
    return LinearSvmModel(
        kind=ClassifierKind.LINEAR_SVM,
        n_features_expected=train.n_features,
        weights=w,
    )
