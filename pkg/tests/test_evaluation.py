import numpy as np
import pytest

from wrapfs.classifiers import ClassifierConfig, ClassifierKind
from wrapfs.data import Dataset
from wrapfs.evaluation import (
    ConfusionMatrix,
    EvaluationError,
    classification_metrics,
    confusion_matrix,
    error_metrics,
    full_metrics,
    k_fold_cv,
    stratified_fold_indices,
)
from conftest import memorizable_dataset


def brute_force_metrics(cm: ConfusionMatrix) -> dict:
    """Independent oracle: expand the counts into label arrays and recompute
    every ratio by counting, not from the closed-form count expressions."""
    y_true = np.array([1] * cm.tp + [1] * cm.fn_ + [0] * cm.fp + [0] * cm.tn)
    y_pred = np.array([1] * cm.tp + [0] * cm.fn_ + [1] * cm.fp + [0] * cm.tn)
    out = {"accuracy": float(np.mean(y_true == y_pred))}
    pos = y_true == 1
    neg = ~pos
    out["sensitivity"] = float(np.mean(y_pred[pos] == 1)) if pos.any() else 0.0
    out["specificity"] = float(np.mean(y_pred[neg] == 0)) if neg.any() else 0.0
    pred_pos = y_pred == 1
    out["precision"] = float(np.mean(y_true[pred_pos] == 1)) if pred_pos.any() else 0.0
    s, p = out["sensitivity"], out["precision"]
    out["f_score"] = 2 * s * p / (s + p) if s + p > 0 else 0.0
    n = y_true.size
    p_obs = out["accuracy"]
    p_exp = (pos.mean() * pred_pos.mean()) + (neg.mean() * (~pred_pos).mean())
    out["kappa"] = (p_obs - p_exp) / (1 - p_exp) if p_exp != 1 else 0.0
    return out


class TestConfusionMatrix:
    def test_perfect_prediction(self):
        cm = confusion_matrix([1, 1, 0, 0], [1, 1, 0, 0])
        assert (cm.tp, cm.tn, cm.fp, cm.fn_) == (2, 2, 0, 0)

    def test_total_inversion(self):
        cm = confusion_matrix([1, 0], [0, 1])
        assert (cm.tp, cm.tn, cm.fp, cm.fn_) == (0, 0, 1, 1)

    def test_fixture_counts(self):
        y_true = [1] * 55 + [0] * 45
        y_pred = [1] * 50 + [0] * 5 + [1] * 3 + [0] * 42
        cm = confusion_matrix(y_true, y_pred)
        assert (cm.tp, cm.fn_, cm.fp, cm.tn) == (50, 5, 3, 42)
        assert cm.n == 100

    def test_length_mismatch(self):
        with pytest.raises(EvaluationError):
            confusion_matrix([1, 0], [1])

    def test_empty_rejected(self):
        with pytest.raises(EvaluationError):
            confusion_matrix([], [])


class TestClassificationMetrics:
    def test_hand_case(self):
        m = classification_metrics(ConfusionMatrix(tp=50, fn_=5, fp=3, tn=42))
        assert m.accuracy == pytest.approx(0.92)
        assert m.sensitivity == pytest.approx(50 / 55)
        assert m.specificity == pytest.approx(42 / 45)
        assert m.precision == pytest.approx(50 / 53)
        assert m.f_score == pytest.approx(25 / 27)  # = 0.925925...
        assert not m.degenerate

    def test_perfect_matrix(self):
        m = classification_metrics(ConfusionMatrix(tp=10, fn_=0, fp=0, tn=5))
        for value in (m.accuracy, m.sensitivity, m.specificity, m.precision, m.f_score):
            assert value == 1.0
        assert m.kappa == pytest.approx(1.0)

    def test_constant_positive_has_zero_kappa(self):
        m = classification_metrics(ConfusionMatrix(tp=5, fn_=0, fp=5, tn=0))
        assert m.kappa == 0.0

    def test_degenerate_flag_on_missing_class(self):
        m = classification_metrics(ConfusionMatrix(tp=0, fn_=0, fp=0, tn=4))
        assert m.degenerate
        assert m.sensitivity == 0.0

    def test_oracle_equivalence_200_matrices(self):
        rng = np.random.default_rng(123)
        for _ in range(200):
            cm = ConfusionMatrix(*(int(v) for v in rng.integers(0, 10_000, size=4)))
            if cm.n == 0:
                continue
            ours = classification_metrics(cm)
            ref = brute_force_metrics(cm)
            for name, expected in ref.items():
                assert getattr(ours, name) == pytest.approx(expected, abs=1e-12), name
            assert -1.0 <= ours.kappa <= 1.0

    def test_kappa_zero_for_constant_predictors(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n_pos = int(rng.integers(1, 50))
            n_neg = int(rng.integers(1, 50))
            all_pos = classification_metrics(ConfusionMatrix(n_pos, 0, n_neg, 0))
            all_neg = classification_metrics(ConfusionMatrix(0, n_pos, 0, n_neg))
            assert all_pos.kappa == 0.0
            assert all_neg.kappa == 0.0

    def test_f_score_harmonic_identity(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            cm = ConfusionMatrix(*(int(v) for v in rng.integers(0, 500, size=4)))
            if cm.n == 0:
                continue
            m = classification_metrics(cm)
            if m.sensitivity + m.precision > 0:
                expected = (
                    2 * m.sensitivity * m.precision / (m.sensitivity + m.precision)
                )
                assert m.f_score == pytest.approx(expected, abs=1e-15)


class TestErrorMetrics:
    def test_identical_sequences(self):
        e = error_metrics([1, 0, 1], [1, 0, 1])
        assert (e.mae, e.rmse, e.rae) == (0.0, 0.0, 0.0)

    def test_single_miss(self):
        e = error_metrics([1, 1, 1, 1], [1, 1, 1, 0])
        assert e.mae == pytest.approx(0.25)
        assert e.rmse == pytest.approx(0.5)
        assert e.rae == pytest.approx(0.5)

    def test_double_inversion(self):
        e = error_metrics([1, 0], [0, 1])
        assert e.mae == pytest.approx(1.0)
        assert e.rmse == pytest.approx(1.0)
        assert e.rae == pytest.approx(np.sqrt(2.0))

    def test_all_zero_truth_flagged(self):
        e = error_metrics([0, 0], [1, 0])
        assert e.rae == 0.0
        assert e.degenerate

    def test_mae_is_one_minus_accuracy(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            n = int(rng.integers(1, 200))
            y_true = rng.integers(0, 2, n)
            y_pred = rng.integers(0, 2, n)
            e = error_metrics(y_true, y_pred)
            accuracy = float(np.mean(y_true == y_pred))
            assert e.mae == pytest.approx(1.0 - accuracy, abs=1e-12)


class TestKFoldCv:
    def test_ocv_is_mean_of_fold_accuracies(self):
        # reference arithmetic from the worked example
        assert np.mean([0.9, 0.8, 1.0, 0.9]) == pytest.approx(0.9)
        ds = memorizable_dataset(n=40)
        cfg = ClassifierConfig(ClassifierKind.KNN, {"k": 1})
        result = k_fold_cv(cfg, ds, k=4, seed=0)
        assert result.ocv_accuracy == pytest.approx(
            np.mean([m.accuracy for m in result.fold_metrics])
        )

    def test_memorizable_fixture_hits_unity(self):
        ds = memorizable_dataset(n=40)
        cfg = ClassifierConfig(ClassifierKind.KNN, {"k": 1})
        result = k_fold_cv(cfg, ds, k=4, seed=0)
        assert result.ocv_accuracy == 1.0
        assert result.k == 4
        assert len(result.fold_metrics) == 4

    def test_deterministic(self):
        ds = memorizable_dataset(n=40)
        cfg = ClassifierConfig(ClassifierKind.DECISION_TREE)
        r1 = k_fold_cv(cfg, ds, k=4, seed=5)
        r2 = k_fold_cv(cfg, ds, k=4, seed=5)
        assert r1 == r2

    def test_folds_partition_dataset(self):
        labels = np.array([0, 1] * 25)
        folds = stratified_fold_indices(labels, k=4, seed=2)
        sizes = [f.size for f in folds]
        assert max(sizes) - min(sizes) <= 2  # one per class at most
        merged = np.sort(np.concatenate(folds))
        assert np.array_equal(merged, np.arange(labels.size))

    def test_fold_sizes_balanced_per_class(self):
        labels = np.array([0] * 20 + [1] * 28)
        folds = stratified_fold_indices(labels, k=4, seed=2)
        for f in folds:
            assert np.sum(labels[f] == 0) == 5
            assert np.sum(labels[f] == 1) == 7

    def test_small_class_rejected(self):
        labels = np.array([0] * 3 + [1] * 20)
        with pytest.raises(EvaluationError):
            stratified_fold_indices(labels, k=4, seed=0)


class TestFullMetrics:
    def test_combines_both_families(self):
        m = full_metrics([1, 1, 0, 0], [1, 0, 0, 0])
        assert m.accuracy == pytest.approx(0.75)
        assert m.mae == pytest.approx(0.25)
        assert m.rmse == pytest.approx(0.5)
