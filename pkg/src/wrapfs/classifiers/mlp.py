"""Fully connected network (tanh hidden layers, sigmoid output) trained by
mini-batch SGD. Stacked saturating layers at this depth need the hidden units
to be variance-preserving at init, which tanh is and the logistic is not."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from .base import ClassifierConfig, ClassifierKind, TrainedModel, check_training_data


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500.0, 500.0)))


@dataclass(frozen=True, eq=False)
class MlpModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]

    def _forward(self, features: np.ndarray) -> np.ndarray:
        a = features
        last = len(self.weights) - 1
        for layer, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ w + b
            a = _sigmoid(z) if layer == last else np.tanh(z)
        return a[:, 0]

    def _predict(self, features: np.ndarray) -> np.ndarray:
        return (self._forward(features) >= 0.5).astype(np.int64)


def train_mlp(cfg: ClassifierConfig, train: Dataset) -> MlpModel:
    """Backprop on cross-entropy, seeded uniform init, shuffled mini-batches."""
    check_training_data(train, needs_both_classes=True)
    x = train.features
    y = train.labels.astype(np.float64)[:, None]
    n, d = x.shape
    sizes = [d] + [cfg.iparam("hidden_width")] * cfg.iparam("n_hidden_layers") + [1]
    scale = cfg.param("init_scale")
    rng = np.random.default_rng(cfg.seed)
    weights = [rng.uniform(-scale, scale, (sizes[i], sizes[i + 1])) for i in range(len(sizes) - 1)]
    biases = [rng.uniform(-scale, scale, sizes[i + 1]) for i in range(len(sizes) - 1)]
    last = len(weights) - 1

    lr = cfg.param("learning_rate")
    batch_size = max(cfg.iparam("batch_size"), 1)
    for _ in range(cfg.iparam("n_epochs")):
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            rows = order[start : start + batch_size]
            xb, yb = x[rows], y[rows]
            # Forward pass, retaining activations for backprop.
            acts = [xb]
            for layer, (w, b) in enumerate(zip(weights, biases)):
                z = acts[-1] @ w + b
                acts.append(_sigmoid(z) if layer == last else np.tanh(z))
            # Cross-entropy with a sigmoid output gives delta = prediction - target.
            delta = (acts[-1] - yb) / rows.size
            for layer in range(last, -1, -1):
                grad_w = acts[layer].T @ delta
                grad_b = delta.sum(axis=0)
                if layer > 0:
                    a_prev = acts[layer]
                    delta = (delta @ weights[layer].T) * (1.0 - a_prev * a_prev)
                weights[layer] -= lr * grad_w
                biases[layer] -= lr * grad_b

    return MlpModel(
        kind=ClassifierKind.MLP,
        n_features_expected=d,
        weights=tuple(weights),
        biases=tuple(biases),
    )
