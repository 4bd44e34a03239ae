"""CART decision trees (Gini impurity) and a bootstrap-aggregated forest.

Tree growth runs in a compiled kernel (see _tree_kernel) because forests are
refit hundreds of times during a mask search; the Python layer handles
configuration, bootstrap draws, and prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import Dataset
from .base import ClassifierConfig, ClassifierKind, TrainedModel, check_training_data
from ._tree_kernel import grow_tree


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "label")

    def __init__(self, label: int = 0):
        self.feature: int = -1
        self.threshold: float = 0.0
        self.left: "_Node | None" = None
        self.right: "_Node | None" = None
        self.label: int = label

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _build_tree(
    x: np.ndarray,
    yv: np.ndarray,
    boot_idx: np.ndarray,
    min_samples_split: int,
    n_feats_per_split: int,
    kernel_seed: int,
) -> _Node:
    xs = np.ascontiguousarray(x[boot_idx])
    lab = np.ascontiguousarray(yv[boot_idx])
    max_nodes = 2 * xs.shape[0] + 1
    feature = np.empty(max_nodes, dtype=np.int64)
    threshold = np.empty(max_nodes, dtype=np.float64)
    left = np.empty(max_nodes, dtype=np.int64)
    right = np.empty(max_nodes, dtype=np.int64)
    label = np.empty(max_nodes, dtype=np.int64)
    grow_tree(
        xs,
        lab,
        min_samples_split,
        n_feats_per_split,
        np.uint64(kernel_seed),
        feature,
        threshold,
        left,
        right,
        label,
    )
    nodes = {}

    def build(i: int) -> _Node:
        node = _Node(label=int(label[i]))
        if feature[i] >= 0:
            node.feature = int(feature[i])
            node.threshold = float(threshold[i])
            node.left = build(int(left[i]))
            node.right = build(int(right[i]))
        return node

    return build(0)


def _predict_tree(root: _Node, features: np.ndarray) -> np.ndarray:
    out = np.empty(features.shape[0], dtype=np.int64)
    # Iterative frontier traversal: route row groups down the tree together.
    stack = [(root, np.arange(features.shape[0]))]
    while stack:
        node, rows = stack.pop()
        if rows.size == 0:
            continue
        if node.is_leaf:
            out[rows] = node.label
            continue
        left = features[rows, node.feature] <= node.threshold
        stack.append((node.left, rows[left]))
        stack.append((node.right, rows[~left]))
    return out


def _tree_depth(node: _Node) -> int:
    if node.is_leaf:
        return 0
    return 1 + max(_tree_depth(node.left), _tree_depth(node.right))


@dataclass(frozen=True, eq=False)
class DecisionTreeModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    root: _Node

    def _predict(self, features: np.ndarray) -> np.ndarray:
        return _predict_tree(self.root, features)

    @property
    def depth(self) -> int:
        return _tree_depth(self.root)


def train_decision_tree(cfg: ClassifierConfig, train: Dataset) -> DecisionTreeModel:
    check_training_data(train, needs_both_classes=False)
    root = _build_tree(
        train.features,
        train.labels.astype(np.float64),
        np.arange(train.n_samples),
        min_samples_split=max(cfg.iparam("min_samples_split"), 2),
        n_feats_per_split=train.n_features,
        kernel_seed=0,  # unused: no feature subsetting
    )
    return DecisionTreeModel(
        kind=ClassifierKind.DECISION_TREE,
        n_features_expected=train.n_features,
        root=root,
    )


@dataclass(frozen=True, eq=False)
class RandomForestModel(TrainedModel):
    kind: ClassifierKind
    n_features_expected: int
    roots: tuple[_Node, ...]

    def _predict(self, features: np.ndarray) -> np.ndarray:
        votes = np.zeros(features.shape[0], dtype=np.int64)
        for root in self.roots:
            votes += _predict_tree(root, features)
        # Ties break toward the negative label, matching single-tree leaves.
        return (2 * votes > len(self.roots)).astype(np.int64)


def train_random_forest(cfg: ClassifierConfig, train: Dataset) -> RandomForestModel:
    check_training_data(train, needs_both_classes=False)
    x, y = train.features, train.labels
    n, d = x.shape
    max_features = cfg.iparam("max_features")
    if max_features == 0:
        n_feats = int(np.ceil(np.sqrt(d)))
    elif max_features < 0:
        n_feats = d
    else:
        n_feats = min(max_features, d)
    bootstrap = cfg.iparam("bootstrap") != 0
    yv = y.astype(np.float64)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.iparam("n_trees"))
    roots = []
    for ss in seeds:
        rng = np.random.default_rng(ss)
        idx = rng.integers(0, n, size=n) if bootstrap else np.arange(n)
        kernel_seed = int(rng.integers(0, 2**63, dtype=np.int64))
        roots.append(_build_tree(x, yv, idx, 2, n_feats, kernel_seed))
    return RandomForestModel(
        kind=ClassifierKind.RANDOM_FOREST,
        n_features_expected=d,
        roots=tuple(roots),
    )
