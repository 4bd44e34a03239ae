"""Discrete boosting over depth-1 stumps with weighted-error threshold search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from .base import ClassifierConfig, ClassifierKind, TrainedModel, check_training_data

_ALPHA_CAP_ERR = 1e-12  # error floor so a perfect stump gets a finite weight


@dataclass(frozen=True)
class _Stump:
    feature: int
    threshold: float
    polarity: int  # +1: predict positive above the threshold; -1: below

    def decide(self, features: np.ndarray) -> np.ndarray:
        above = features[:, self.feature] > self.threshold
        return np.where(above, self.polarity, -self.polarity).astype(np.float64)


def _fit_stump(
    sorted_pos_w: list[np.ndarray],
    sorted_neg_w: list[np.ndarray],
    midpoints: list[np.ndarray],
    cut_indices: list[np.ndarray],
) -> tuple[_Stump, float] | None:
    """Lowest weighted-error stump over all features, cuts, and polarities.

    The per-feature inputs are weight vectors already permuted into sorted-value
    order, so only cumulative sums are recomputed as the weights change.
    """
    best: tuple[float, int, float, int] | None = None
    for f, cuts in enumerate(cut_indices):
        if cuts.size == 0:
            continue
        cum_p = np.cumsum(sorted_pos_w[f])
        cum_n = np.cumsum(sorted_neg_w[f])
        w_pos = cum_p[-1]
        w_neg = cum_n[-1]
        # Polarity +1 misclassifies positives at/below the cut and negatives above.
        err_up = cum_p[cuts] + (w_neg - cum_n[cuts])
        err_down = (w_pos + w_neg) - err_up
        for err, polarity in ((err_up, 1), (err_down, -1)):
            j = int(np.argmin(err))
            score = float(err[j])
            if best is None or score < best[0]:
                best = (score, f, float(midpoints[f][j]), polarity)
    if best is None:
        return None
    score, f, thr, polarity = best
    return _Stump(f, thr, polarity), score


@dataclass(frozen=True, eq=False)
class AdaBoostModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    stumps: tuple[_Stump, ...]
    alphas: tuple[float, ...]
    round_train_errors: tuple[float, ...]  # ensemble 0/1 error after each round
    score_bias: float = 0.0  # non-zero only for single-class training sets

    def _score(self, features: np.ndarray) -> np.ndarray:
        score = np.full(features.shape[0], self.score_bias)
        for stump, alpha in zip(self.stumps, self.alphas):
            score += alpha * stump.decide(features)
        return score

    def _predict(self, features: np.ndarray) -> np.ndarray:
        return (self._score(features) >= 0.0).astype(np.int64)


def train_adaboost(cfg: ClassifierConfig, train: Dataset) -> AdaBoostModel:
    check_training_data(train, needs_both_classes=False)
    x = train.features
    ysign = np.where(train.labels == 1, 1.0, -1.0)
    n, d = x.shape
    if np.unique(train.labels).size < 2:
        return AdaBoostModel(
            kind=ClassifierKind.ADABOOST,
            n_features_expected=d,
            stumps=(),
            alphas=(),
            round_train_errors=(0.0,),
            score_bias=float(ysign[0]),
        )

    # Sort order per feature is weight-independent: precompute it once.
    orders = [np.argsort(x[:, f], kind="stable") for f in range(d)]
    midpoints: list[np.ndarray] = []
    cut_indices: list[np.ndarray] = []
    for f in range(d):
        xs = x[orders[f], f]
        cuts = np.flatnonzero(xs[:-1] < xs[1:])
        mids = 0.5 * (xs[cuts] + xs[cuts + 1]) if cuts.size else np.empty(0)
        cut_indices.append(cuts)
        midpoints.append(mids)

    weights = np.full(n, 1.0 / n)
    pos_mask = ysign > 0
    stumps: list[_Stump] = []
    alphas: list[float] = []
    train_errors: list[float] = []
    score = np.zeros(n)
    for _ in range(cfg.iparam("n_rounds")):
        sorted_pos_w = [np.where(pos_mask, weights, 0.0)[o] for o in orders]
        sorted_neg_w = [np.where(~pos_mask, weights, 0.0)[o] for o in orders]
        fitted = _fit_stump(sorted_pos_w, sorted_neg_w, midpoints, cut_indices)
        if fitted is None:
            break
        stump, err = fitted
        if err >= 0.5:
            break
        alpha = 0.5 * np.log((1.0 - err) / max(err, _ALPHA_CAP_ERR))
        stumps.append(stump)
        alphas.append(float(alpha))
        h = stump.decide(x)
        score += alpha * h
        train_errors.append(float(np.mean(np.where(score >= 0.0, 1.0, -1.0) != ysign)))
        if err <= _ALPHA_CAP_ERR:
            break
        weights *= np.exp(-alpha * ysign * h)
        weights /= weights.sum()

    return AdaBoostModel(
        kind=ClassifierKind.ADABOOST,
        n_features_expected=d,
        stumps=tuple(stumps),
        alphas=tuple(alphas),
        round_train_errors=tuple(train_errors),
    )
