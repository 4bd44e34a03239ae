"""Confusion-matrix metrics and stratified k-fold cross-validation.

All metrics are fractions (not percentages). Ratios with a zero denominator
come back as 0.0 with the report's `degenerate` flag set instead of raising,
so sweeps over many candidate masks never abort mid-search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classifiers import ClassifierConfig, predict, train_classifier
from .data import Dataset


class EvaluationError(ValueError):
    """Inconsistent prediction/label inputs."""


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with positive = benign: true/false positives and negatives."""

    tp: int
    fn_: int
    fp: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fn_", "fp", "tn"):
            v = getattr(self, name)
            if v < 0 or v != int(v):
                raise EvaluationError(f"{name} must be a non-negative integer, got {v}")

    @property
    def n(self) -> int:
        return self.tp + self.fn_ + self.fp + self.tn


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    sensitivity: float
    specificity: float
    precision: float
    f_score: float
    kappa: float
    mae: float = 0.0
    rmse: float = 0.0
    rae: float = 0.0
    degenerate: bool = False


@dataclass(frozen=True)
class ErrorMetrics:
    mae: float
    rmse: float
    rae: float
    degenerate: bool = False


@dataclass(frozen=True)
class CvResult:
    fold_metrics: tuple[MetricsReport, ...]
    ocv_accuracy: float
    k: int


def _as_binary(values: Sequence[int] | np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64).ravel()
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise EvaluationError(f"{name} must contain only 0/1 labels")
    return arr


def confusion_matrix(
    y_true: Sequence[int] | np.ndarray, y_pred: Sequence[int] | np.ndarray
) -> ConfusionMatrix:
    t = _as_binary(y_true, "y_true")
    p = _as_binary(y_pred, "y_pred")
    if t.size != p.size:
        raise EvaluationError(f"length mismatch: {t.size} true vs {p.size} predicted")
    if t.size == 0:
        raise EvaluationError("need at least one sample")
    return ConfusionMatrix(
        tp=int(np.sum((t == 1) & (p == 1))),
        fn_=int(np.sum((t == 1) & (p == 0))),
        fp=int(np.sum((t == 0) & (p == 1))),
        tn=int(np.sum((t == 0) & (p == 0))),
    )


def _ratio(num: float, den: float) -> tuple[float, bool]:
    if den == 0:
        return 0.0, True
    return num / den, False


def classification_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy, sensitivity, specificity, precision, F-score, and Cohen kappa."""
    n = cm.n
    if n == 0:
        raise EvaluationError("confusion matrix is empty")
    degenerate = False
    accuracy = (cm.tp + cm.tn) / n
    sensitivity, d1 = _ratio(cm.tp, cm.tp + cm.fn_)
    specificity, d2 = _ratio(cm.tn, cm.tn + cm.fp)
    precision, d3 = _ratio(cm.tp, cm.tp + cm.fp)
    f_score, d4 = _ratio(2.0 * sensitivity * precision, sensitivity + precision)
    p_observed = accuracy
    p_expected = (
        (cm.tp + cm.fn_) * (cm.tp + cm.fp) + (cm.fp + cm.tn) * (cm.fn_ + cm.tn)
    ) / (n * n)
    kappa, d5 = _ratio(p_observed - p_expected, 1.0 - p_expected)
    degenerate = d1 or d2 or d3 or d4 or d5
    return MetricsReport(
        accuracy=accuracy,
        sensitivity=sensitivity,
        specificity=specificity,
        precision=precision,
        f_score=f_score,
        kappa=kappa,
        degenerate=degenerate,
    )


def error_metrics(
    y_true: Sequence[int] | np.ndarray, y_pred: Sequence[int] | np.ndarray
) -> ErrorMetrics:
    """Mean absolute error, root-mean-square error, and the L2 error ratio.

    The last value divides the root-sum-of-squares of the prediction errors by
    the root-sum-of-squares of the true values (0 with a flag when the true
    labels are all zero).
    """
    t = _as_binary(y_true, "y_true").astype(np.float64)
    p = _as_binary(y_pred, "y_pred").astype(np.float64)
    if t.size != p.size:
        raise EvaluationError(f"length mismatch: {t.size} true vs {p.size} predicted")
    if t.size == 0:
        raise EvaluationError("need at least one sample")
    diff = p - t
    mae = float(np.abs(diff).mean())
    rmse = float(np.sqrt(np.mean(diff**2)))
    denom = float(np.sqrt(np.sum(t**2)))
    if denom == 0.0:
        return ErrorMetrics(mae=mae, rmse=rmse, rae=0.0, degenerate=True)
    rae = float(np.sqrt(np.sum(diff**2)) / denom)
    return ErrorMetrics(mae=mae, rmse=rmse, rae=rae)


def full_metrics(
    y_true: Sequence[int] | np.ndarray, y_pred: Sequence[int] | np.ndarray
) -> MetricsReport:
    """All nine metrics from one prediction set."""
    cls = classification_metrics(confusion_matrix(y_true, y_pred))
    err = error_metrics(y_true, y_pred)
    return MetricsReport(
        accuracy=cls.accuracy,
        sensitivity=cls.sensitivity,
        specificity=cls.specificity,
        precision=cls.precision,
        f_score=cls.f_score,
        kappa=cls.kappa,
        mae=err.mae,
        rmse=err.rmse,
        rae=err.rae,
        degenerate=cls.degenerate or err.degenerate,
    )


def stratified_fold_indices(
    labels: np.ndarray, k: int, seed: int
) -> list[np.ndarray]:
    """Seeded partition into k folds of near-equal size, stratified by class."""
    if k < 2:
        raise EvaluationError(f"k must be >= 2, got {k}")
    rng = np.random.default_rng(seed)
    folds: list[list[np.ndarray]] = [[] for _ in range(k)]
    for c in np.unique(labels):
        idx = np.flatnonzero(labels == c)
        if idx.size < k:
            raise EvaluationError(
                f"class {c} has {idx.size} samples, fewer than k={k}"
            )
        perm = rng.permutation(idx)
        for f, chunk in enumerate(np.array_split(perm, k)):
            folds[f].append(chunk)
    return [np.sort(np.concatenate(parts)) for parts in folds]


def k_fold_cv(cfg: ClassifierConfig, ds: Dataset, k: int, seed: int) -> CvResult:
    """Train on k-1 folds, evaluate on the held-out fold, average the accuracies."""
    folds = stratified_fold_indices(ds.labels, k, seed)
    all_idx = np.arange(ds.n_samples)
    fold_metrics = []
    for test_idx in folds:
        in_test = np.zeros(ds.n_samples, dtype=bool)
        in_test[test_idx] = True
        train_idx = all_idx[~in_test]
        train = Dataset(ds.features[train_idx], ds.labels[train_idx], ds.feature_names)
        model = train_classifier(cfg, train)
        preds = predict(model, ds.features[test_idx])
        fold_metrics.append(full_metrics(ds.labels[test_idx], preds))
    ocv = float(np.mean([m.accuracy for m in fold_metrics]))
    return CvResult(fold_metrics=tuple(fold_metrics), ocv_accuracy=ocv, k=k)
