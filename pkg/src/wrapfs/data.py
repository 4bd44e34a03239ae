"""Tabular data handling: parsing, min-max scaling, stratified splitting, column masks.

Labels are binary throughout: 1 = positive (benign), 0 = negative (malignant).
All containers are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

POSITIVE = 1
NEGATIVE = 0

_BASE_FEATURES = (
    "radius",
    "texture",
    "perimeter",
    "area",
    "smoothness",
    "compactness",
    "concavity",
    "concave_points",
    "symmetry",
    "fractal_dimension",
)

#: Canonical column names for the 30-feature breast-mass format:
#: per-cell-nucleus mean, standard error, and worst value of ten measurements.
WDBC_FEATURE_NAMES: tuple[str, ...] = tuple(
    f"{base}_{group}" for group in ("mean", "se", "worst") for base in _BASE_FEATURES
)


class DataError(ValueError):
    """Malformed input data (bad field counts, values, or dimensions)."""


class ParseError(DataError):
    """Unparsable record; the message names the offending line."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix with binary labels and column names."""

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]

    def __post_init__(self) -> None:
        feats = np.asarray(self.features, dtype=np.float64)
        if feats.ndim != 2:
            raise DataError(f"features must be 2-D, got shape {feats.shape}")
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1 or labels.shape[0] != feats.shape[0]:
            raise DataError(
                f"labels length {labels.shape} does not match {feats.shape[0]} rows"
            )
        if labels.size and not np.isin(labels, (NEGATIVE, POSITIVE)).all():
            raise DataError("labels must be 0 (negative) or 1 (positive)")
        names = tuple(self.feature_names)
        if len(names) != feats.shape[1]:
            raise DataError(
                f"{len(names)} feature names for {feats.shape[1]} columns"
            )
        object.__setattr__(self, "features", _readonly(feats))
        object.__setattr__(self, "labels", _readonly(labels))
        object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def class_counts(self) -> tuple[int, int]:
        """(n_negative, n_positive)."""
        pos = int(np.count_nonzero(self.labels == POSITIVE))
        return self.n_samples - pos, pos


@dataclass(frozen=True)
class FeatureMask:
    """Bit vector over dataset columns; True selects the column."""

    bits: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))

    @classmethod
    def all_ones(cls, n: int) -> "FeatureMask":
        return cls((True,) * n)

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "FeatureMask":
        bits = [False] * n
        for i in indices:
            bits[i] = True
        return cls(tuple(bits))

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def n_selected(self) -> int:
        return sum(self.bits)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=bool)

    def key(self) -> str:
        """Compact stable identifier ('0'/'1' string), usable as a cache key."""
        return "".join("1" if b else "0" for b in self.bits)


@dataclass(frozen=True, eq=False)
class ScalerParams:
    """Per-column minimum and maximum learned from training data."""

    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self) -> None:
        mins = np.asarray(self.mins, dtype=np.float64)
        maxs = np.asarray(self.maxs, dtype=np.float64)
        if mins.shape != maxs.shape or mins.ndim != 1:
            raise DataError("mins and maxs must be 1-D arrays of equal length")
        if np.any(mins > maxs):
            raise DataError("every min must be <= its max")
        object.__setattr__(self, "mins", _readonly(mins))
        object.__setattr__(self, "maxs", _readonly(maxs))

    @property
    def n_features(self) -> int:
        return self.mins.shape[0]


def parse_wdbc(text: str | Iterable[str]) -> Dataset:
    """Parse the comma-separated breast-mass record format.

    Each non-empty line: record id, diagnosis (M or B), then 30 real values.
    B maps to positive (benign), M to negative (malignant).
    """
    lines = text.splitlines() if isinstance(text, str) else text
    rows: list[list[float]] = []
    labels: list[int] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 32:
            raise ParseError(
                f"line {lineno}: expected 32 comma-separated fields, got {len(fields)}"
            )
        diagnosis = fields[1].strip()
        if diagnosis == "B":
            labels.append(POSITIVE)
        elif diagnosis == "M":
            labels.append(NEGATIVE)
        else:
            raise ParseError(f"line {lineno}: diagnosis must be M or B, got {diagnosis!r}")
        try:
            rows.append([float(v) for v in fields[2:]])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: unparsable feature value ({exc})") from exc
    if not rows:
        raise ParseError("no records")
    return Dataset(np.array(rows), np.array(labels), WDBC_FEATURE_NAMES)


def parse_labeled_csv(text: str | Iterable[str]) -> Dataset:
    """Parse a headered CSV with a 'label' column holding 0/1.

    All other columns are numeric features, kept in header order.
    """
    if not isinstance(text, str):
        text = "\n".join(text)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("no records") from None
    header = [h.strip() for h in header]
    if "label" not in header:
        raise ParseError("header must contain a 'label' column")
    label_col = header.index("label")
    names = tuple(h for i, h in enumerate(header) if i != label_col)
    rows: list[list[float]] = []
    labels: list[int] = []
    for lineno, fields in enumerate(reader, start=2):
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != len(header):
            raise ParseError(
                f"line {lineno}: expected {len(header)} fields, got {len(fields)}"
            )
        raw_label = fields[label_col].strip()
        if raw_label not in ("0", "1"):
            raise ParseError(f"line {lineno}: label must be 0 or 1, got {raw_label!r}")
        labels.append(int(raw_label))
        try:
            rows.append([float(v) for i, v in enumerate(fields) if i != label_col])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: unparsable feature value ({exc})") from exc
    if not rows:
        raise ParseError("no records")
    return Dataset(np.array(rows), np.array(labels), names)


def load_dataset(path: str) -> Dataset:
    """Load a dataset file, sniffing between the headerless 32-field format
    and the generic headered CSV (any header containing a 'label' column)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        tokens = [t.strip() for t in line.split(",")]
        if "label" in tokens:
            return parse_labeled_csv(text)
        break
    return parse_wdbc(text)


def fit_scaler(train: Dataset) -> ScalerParams:
    """Column-wise min/max of the training features only."""
    if train.n_samples == 0:
        raise DataError("cannot fit scaler on an empty dataset")
    return ScalerParams(train.features.min(axis=0), train.features.max(axis=0))


def transform(ds: Dataset, params: ScalerParams) -> Dataset:
    """Map each value to (x - min) / (max - min), clipped to [0, 1].

    Constant columns (max == min) map to 0.0.
    """
    if ds.n_features != params.n_features:
        raise DataError(
            f"dataset has {ds.n_features} columns, scaler expects {params.n_features}"
        )
    span = params.maxs - params.mins
    safe_span = np.where(span > 0, span, 1.0)
    scaled = (ds.features - params.mins) / safe_span
    scaled = np.where(span > 0, scaled, 0.0)
    return Dataset(np.clip(scaled, 0.0, 1.0), ds.labels, ds.feature_names)


def stratified_split(
    ds: Dataset, train_fraction: float, seed: int
) -> tuple[Dataset, Dataset]:
    """Seeded two-way split preserving per-class proportions within one sample."""
    if not 0.0 < train_fraction < 1.0:
        raise DataError(f"train_fraction must be in (0, 1), got {train_fraction}")
    classes = np.unique(ds.labels)
    if classes.size < 2:
        raise DataError("stratified split needs at least one sample of each class")
    rng = np.random.default_rng(seed)
    counts = np.array([np.count_nonzero(ds.labels == c) for c in classes])
    # Largest-remainder rounding: per-class floors, residue (so the train side
    # totals round(n * fraction) exactly) goes to the largest fractions first.
    targets = counts * train_fraction
    floors = np.floor(targets).astype(int)
    residue = int(round(ds.n_samples * train_fraction)) - int(floors.sum())
    by_remainder = np.argsort(-(targets - floors), kind="stable")
    take = floors.copy()
    for c_i in by_remainder[: max(residue, 0)]:
        take[c_i] += 1
    train_idx: list[np.ndarray] = []
    test_idx: list[np.ndarray] = []
    for c_i, c in enumerate(classes):
        perm = rng.permutation(np.flatnonzero(ds.labels == c))
        train_idx.append(perm[: take[c_i]])
        test_idx.append(perm[take[c_i] :])
    train = np.sort(np.concatenate(train_idx))
    test = np.sort(np.concatenate(test_idx))
    return _take_rows(ds, train), _take_rows(ds, test)


def apply_mask(ds: Dataset, mask: FeatureMask) -> Dataset:
    """Project onto the selected columns, preserving column order and labels."""
    if len(mask) != ds.n_features:
        raise DataError(f"mask length {len(mask)} != {ds.n_features} columns")
    if mask.n_selected == 0:
        raise DataError("mask selects no columns")
    sel = mask.as_array()
    names = tuple(n for n, keep in zip(ds.feature_names, mask.bits) if keep)
    return Dataset(ds.features[:, sel], ds.labels, names)


def _take_rows(ds: Dataset, indices: np.ndarray) -> Dataset:
    return Dataset(ds.features[indices], ds.labels[indices], ds.feature_names)
