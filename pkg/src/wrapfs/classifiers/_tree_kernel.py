"""Compiled CART growth kernel.

Grows one tree with an explicit stack into flat node arrays. Split rules:
exhaustive Gini over midpoints of consecutive distinct values of the candidate
features; ties prefer the first feature in index order, then the lowest cut;
children split on `value <= threshold`; leaf labels take the node majority
with ties toward the negative class.

Feature subsets (for forests) come from a splitmix64-seeded partial shuffle so
the kernel stays self-contained and platform-deterministic.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NO_FEATURE = -1


@njit(cache=True, inline="always")
def _splitmix64(state: np.uint64) -> tuple[np.uint64, np.uint64]:
    state = state + np.uint64(0x9E3779B97F4A7C15)
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True)
def grow_tree(
    xs: np.ndarray,  # (n, d) training rows for this tree (bootstrap applied)
    yv: np.ndarray,  # (n,) labels as float 0/1
    min_samples_split: int,
    n_feats_per_split: int,
    rng_seed: np.uint64,
    node_feature: np.ndarray,  # out: (max_nodes,) int64
    node_threshold: np.ndarray,  # out: (max_nodes,) float64
    node_left: np.ndarray,  # out: (max_nodes,) int64
    node_right: np.ndarray,  # out: (max_nodes,) int64
    node_label: np.ndarray,  # out: (max_nodes,) int64
) -> int:
    """Fill the node arrays; returns the number of nodes written."""
    n, d = xs.shape
    use_subset = n_feats_per_split < d
    feat_pool = np.arange(d)
    idx = np.arange(n)
    rng_state = rng_seed

    # Stack of (node_id, lo, hi) ranges over idx.
    stack_node = np.empty(2 * n + 1, dtype=np.int64)
    stack_lo = np.empty(2 * n + 1, dtype=np.int64)
    stack_hi = np.empty(2 * n + 1, dtype=np.int64)
    top = 0
    stack_node[0] = 0
    stack_lo[0] = 0
    stack_hi[0] = n
    top = 1
    n_nodes = 1

    scratch = np.empty(n, dtype=np.int64)

    while top > 0:
        top -= 1
        node = stack_node[top]
        lo = stack_lo[top]
        hi = stack_hi[top]
        size = hi - lo

        pos = 0.0
        for i in range(lo, hi):
            pos += yv[idx[i]]
        majority = 1 if 2.0 * pos > size else 0
        node_feature[node] = NO_FEATURE
        node_label[node] = majority
        node_left[node] = -1
        node_right[node] = -1
        if pos == 0.0 or pos == size or size < min_samples_split:
            continue

        if use_subset:
            # Partial Fisher-Yates over the feature pool, then index order.
            for j in range(n_feats_per_split):
                rng_state, draw = _splitmix64(rng_state)
                k = j + int(draw % np.uint64(d - j))
                feat_pool[j], feat_pool[k] = feat_pool[k], feat_pool[j]
            feats = np.sort(feat_pool[:n_feats_per_split])
        else:
            feats = feat_pool

        best_score = np.inf
        best_feature = NO_FEATURE
        best_threshold = 0.0
        vals = np.empty(size, dtype=np.float64)
        labs = np.empty(size, dtype=np.float64)
        for fj in range(feats.shape[0]):
            f = feats[fj]
            for i in range(size):
                vals[i] = xs[idx[lo + i], f]
            order = np.argsort(vals)
            total = 0.0
            for i in range(size):
                labs[i] = yv[idx[lo + order[i]]]
                total += labs[i]
            pos_left = 0.0
            for cut in range(size - 1):
                pos_left += labs[cut]
                v_lo = vals[order[cut]]
                v_hi = vals[order[cut + 1]]
                if not v_lo < v_hi:
                    continue
                n_left = float(cut + 1)
                n_right = float(size - cut - 1)
                pos_right = total - pos_left
                neg_left = n_left - pos_left
                neg_right = n_right - pos_right
                score = (
                    size
                    - (pos_left * pos_left + neg_left * neg_left) / n_left
                    - (pos_right * pos_right + neg_right * neg_right) / n_right
                )
                if score < best_score:
                    thr = 0.5 * (v_lo + v_hi)
                    if thr >= v_hi:
                        # midpoint rounded up; keep both children non-empty
                        thr = v_lo
                    best_score = score
                    best_feature = f
                    best_threshold = thr

        if best_feature == NO_FEATURE:
            continue

        # Stable partition of idx[lo:hi] by the split predicate.
        n_left_rows = 0
        n_right_rows = 0
        for i in range(lo, hi):
            r = idx[i]
            if xs[r, best_feature] <= best_threshold:
                idx[lo + n_left_rows] = r
                n_left_rows += 1
            else:
                scratch[n_right_rows] = r
                n_right_rows += 1
        for i in range(n_right_rows):
            idx[lo + n_left_rows + i] = scratch[i]

        left_id = n_nodes
        right_id = n_nodes + 1
        n_nodes += 2
        node_feature[node] = best_feature
        node_threshold[node] = best_threshold
        node_left[node] = left_id
        node_right[node] = right_id
        stack_node[top] = left_id
        stack_lo[top] = lo
        stack_hi[top] = lo + n_left_rows
        top += 1
        stack_node[top] = right_id
        stack_lo[top] = lo + n_left_rows
        stack_hi[top] = hi
        top += 1

    return n_nodes
