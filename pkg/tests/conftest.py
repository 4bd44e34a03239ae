import numpy as np
import pytest

from wrapfs.data import Dataset


def majority_sign_dataset(
    n: int = 200,
    d: int = 20,
    informative: tuple[int, ...] = (2, 7, 13),
    seed: int = 0,
) -> Dataset:
    """Synthetic recovery target: the label is the majority sign of the
    designated columns; every other column is independent noise."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, d))
    votes = (x[:, list(informative)] > 0).sum(axis=1)
    y = (2 * votes > len(informative)).astype(int)
    names = tuple(f"f{i:02d}" for i in range(d))
    return Dataset(x, y, names)


def memorizable_dataset(n: int = 40, seed: int = 3) -> Dataset:
    """Column 0 equals the label; nothing else carries signal."""
    rng = np.random.default_rng(seed)
    y = np.array([0, 1] * (n // 2))
    x = np.column_stack([y.astype(float), rng.random(n), rng.random(n)])
    return Dataset(x, y, ("echo", "noise_a", "noise_b"))


def diagonal_dataset(n_side: int = 7) -> Dataset:
    """Separable by x0 + x1 > 1 but not by any single axis-aligned stump."""
    grid = np.linspace(0.05, 0.95, n_side)
    xx, yy = np.meshgrid(grid, grid)
    x = np.column_stack([xx.ravel(), yy.ravel()])
    y = (x[:, 0] + x[:, 1] > 1.0).astype(int)
    return Dataset(x, y, ("a", "b"))


def two_cloud_dataset(
    n_per_class: int = 30, spread: float = 0.05, seed: int = 11
) -> Dataset:
    """Well-separated Gaussian clouds centred at 0.2 and 0.8 in every axis."""
    rng = np.random.default_rng(seed)
    neg = rng.normal(0.2, spread, size=(n_per_class, 3))
    pos = rng.normal(0.8, spread, size=(n_per_class, 3))
    x = np.vstack([neg, pos])
    y = np.array([0] * n_per_class + [1] * n_per_class)
    return Dataset(x, y, ("u", "v", "w"))


@pytest.fixture(scope="session")
def wdbc_path(tmp_path_factory) -> str:
    """A UCI-format data file materialized from scikit-learn's bundled copy
    of the same 569-record dataset."""
    sklearn_datasets = pytest.importorskip("sklearn.datasets")
    bunch = sklearn_datasets.load_breast_cancer()
    lines = []
    for i in range(bunch.data.shape[0]):
        diagnosis = "B" if bunch.target[i] == 1 else "M"  # sklearn: 1 = benign
        values = ",".join(repr(float(v)) for v in bunch.data[i])
        lines.append(f"{842000 + i},{diagnosis},{values}")
    path = tmp_path_factory.mktemp("data") / "wdbc.data"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture(scope="session")
def wdbc_dataset(wdbc_path) -> Dataset:
    from wrapfs.data import load_dataset

    return load_dataset(wdbc_path)
