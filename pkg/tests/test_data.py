import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrapfs.data import (
    DataError,
    Dataset,
    FeatureMask,
    ParseError,
    apply_mask,
    fit_scaler,
    load_dataset,
    parse_labeled_csv,
    parse_wdbc,
    stratified_split,
    transform,
)


def _wdbc_line(record_id, diagnosis, values):
    return f"{record_id},{diagnosis}," + ",".join(str(v) for v in values)


class TestParseWdbc:
    def test_full_file(self, wdbc_dataset):
        assert wdbc_dataset.n_samples == 569
        assert wdbc_dataset.n_features == 30
        neg, pos = wdbc_dataset.class_counts()
        assert pos == 357  # benign
        assert neg == 212  # malignant

    def test_empty_input_is_no_records(self):
        with pytest.raises(ParseError, match="no records"):
            parse_wdbc("")

    def test_single_benign_line(self):
        ds = parse_wdbc(_wdbc_line(1, "B", [0.5] * 30))
        assert ds.n_samples == 1
        assert ds.labels[0] == 1

    def test_malignant_maps_to_negative(self):
        ds = parse_wdbc(_wdbc_line(1, "M", [0.5] * 30))
        assert ds.labels[0] == 0

    def test_blank_lines_skipped(self):
        text = "\n" + _wdbc_line(1, "B", [1.0] * 30) + "\n\n"
        assert parse_wdbc(text).n_samples == 1

    def test_wrong_field_count_names_line(self):
        text = _wdbc_line(1, "B", [1.0] * 30) + "\n" + "2,B,1.0"
        with pytest.raises(ParseError, match="line 2"):
            parse_wdbc(text)

    def test_bad_diagnosis_names_line(self):
        with pytest.raises(ParseError, match="line 1.*diagnosis"):
            parse_wdbc(_wdbc_line(1, "X", [1.0] * 30))

    def test_unparsable_number_names_line(self):
        values = ["1.0"] * 29 + ["oops"]
        with pytest.raises(ParseError, match="line 1"):
            parse_wdbc(_wdbc_line(1, "B", values))


class TestLabeledCsv:
    def test_roundtrip(self):
        text = "a,label,b\n1.0,1,2.0\n3.0,0,4.0\n"
        ds = parse_labeled_csv(text)
        assert ds.feature_names == ("a", "b")
        assert ds.labels.tolist() == [1, 0]
        assert ds.features.tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_missing_label_column(self):
        with pytest.raises(ParseError, match="label"):
            parse_labeled_csv("a,b\n1,2\n")

    def test_bad_label_value(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_labeled_csv("a,label\n1.0,2\n")

    def test_load_dataset_sniffs_header(self, tmp_path):
        p = tmp_path / "generic.csv"
        p.write_text("x,label\n0.1,0\n0.2,1\n")
        ds = load_dataset(str(p))
        assert ds.feature_names == ("x",)


class TestScaler:
    def test_simple_min_max(self):
        ds = Dataset(np.array([[0.0], [5.0], [10.0]]), [0, 1, 0], ("f",))
        s = fit_scaler(ds)
        assert s.mins[0] == 0 and s.maxs[0] == 10

    def test_constant_column(self):
        ds = Dataset(np.array([[7.0], [7.0], [7.0]]), [0, 1, 0], ("f",))
        s = fit_scaler(ds)
        assert s.mins[0] == 7 and s.maxs[0] == 7
        out = transform(ds, s)
        assert np.all(out.features == 0.0)

    def test_two_columns(self):
        ds = Dataset(np.array([[1.0, 2.0], [3.0, 4.0]]), [0, 1], ("f", "g"))
        s = fit_scaler(ds)
        assert s.mins.tolist() == [1.0, 2.0]
        assert s.maxs.tolist() == [3.0, 4.0]

    @pytest.mark.parametrize("x,expected", [(0.0, 0.0), (10.0, 1.0), (5.0, 0.5)])
    def test_transform_values(self, x, expected):
        train = Dataset(np.array([[0.0], [10.0]]), [0, 1], ("f",))
        s = fit_scaler(train)
        out = transform(Dataset(np.array([[x]]), [0], ("f",)), s)
        assert out.features[0, 0] == expected

    def test_out_of_range_clipped(self):
        train = Dataset(np.array([[0.0], [10.0]]), [0, 1], ("f",))
        s = fit_scaler(train)
        out = transform(Dataset(np.array([[-5.0], [15.0]]), [0, 1], ("f",)), s)
        assert out.features.min() == 0.0
        assert out.features.max() == 1.0

    def test_dimension_mismatch(self):
        train = Dataset(np.array([[0.0], [10.0]]), [0, 1], ("f",))
        s = fit_scaler(train)
        wide = Dataset(np.array([[1.0, 2.0]]), [0], ("f", "g"))
        with pytest.raises(DataError):
            transform(wide, s)

    def test_train_maps_onto_unit_interval(self):
        rng = np.random.default_rng(0)
        ds = Dataset(rng.normal(size=(50, 4)) * 10, rng.integers(0, 2, 50), tuple("abcd"))
        out = transform(ds, fit_scaler(ds))
        assert out.features.min() >= 0.0 and out.features.max() <= 1.0
        np.testing.assert_allclose(out.features.min(axis=0), 0.0)
        np.testing.assert_allclose(out.features.max(axis=0), 1.0)


class TestStratifiedSplit:
    def test_wdbc_proportions(self, wdbc_dataset):
        train, test = stratified_split(wdbc_dataset, 0.6, seed=1)
        assert train.n_samples == 341
        assert test.n_samples == 228
        # class ratios preserved within one sample per class
        assert train.class_counts() == (127, 214)
        assert test.class_counts() == (85, 143)

    def test_symmetric_small_case(self):
        ds = Dataset(np.arange(20, dtype=float).reshape(10, 2), [0, 1] * 5, ("a", "b"))
        train, test = stratified_split(ds, 0.5, seed=9)
        assert train.n_samples == test.n_samples == 5
        assert 0 < train.labels.sum() < 5  # both classes present

    def test_deterministic(self, wdbc_dataset):
        a1, b1 = stratified_split(wdbc_dataset, 0.6, seed=7)
        a2, b2 = stratified_split(wdbc_dataset, 0.6, seed=7)
        assert np.array_equal(a1.features, a2.features)
        assert np.array_equal(b1.labels, b2.labels)

    def test_partition(self, wdbc_dataset):
        train, test = stratified_split(wdbc_dataset, 0.6, seed=5)
        assert train.n_samples + test.n_samples == wdbc_dataset.n_samples
        combined = np.vstack([train.features, test.features])
        reference = np.sort(wdbc_dataset.features.copy(), axis=0)
        assert np.array_equal(np.sort(combined, axis=0), reference)

    def test_single_class_rejected(self):
        ds = Dataset(np.zeros((4, 1)), [1, 1, 1, 1], ("f",))
        with pytest.raises(DataError):
            stratified_split(ds, 0.5, seed=0)

    def test_bad_fraction_rejected(self, wdbc_dataset):
        with pytest.raises(DataError):
            stratified_split(wdbc_dataset, 1.0, seed=0)


class TestApplyMask:
    def _ds(self):
        return Dataset(np.arange(12, dtype=float).reshape(3, 4), [0, 1, 0], tuple("abcd"))

    def test_all_ones_is_identity(self):
        ds = self._ds()
        out = apply_mask(ds, FeatureMask.all_ones(4))
        assert np.array_equal(out.features, ds.features)
        assert out.feature_names == ds.feature_names

    def test_single_column_projection(self):
        ds = self._ds()
        out = apply_mask(ds, FeatureMask((True, False, False, False)))
        assert out.n_features == 1
        assert out.features[:, 0].tolist() == [0.0, 4.0, 8.0]
        assert out.feature_names == ("a",)

    def test_subset_popcount(self, wdbc_dataset):
        mask = FeatureMask.from_indices(range(10), 30)
        out = apply_mask(wdbc_dataset, mask)
        assert out.n_features == 10

    def test_empty_mask_rejected(self):
        with pytest.raises(DataError):
            apply_mask(self._ds(), FeatureMask((False,) * 4))

    def test_length_mismatch_rejected(self):
        with pytest.raises(DataError):
            apply_mask(self._ds(), FeatureMask((True,) * 5))

    @given(st.lists(st.booleans(), min_size=1, max_size=8))
    @settings(max_examples=50, deadline=None)
    def test_column_order_preserved(self, bits):
        if not any(bits):
            bits[0] = True
        d = len(bits)
        ds = Dataset(
            np.arange(2 * d, dtype=float).reshape(2, d),
            [0, 1],
            tuple(f"c{i}" for i in range(d)),
        )
        out = apply_mask(ds, FeatureMask(tuple(bits)))
        expected = [f"c{i}" for i, b in enumerate(bits) if b]
        assert list(out.feature_names) == expected


class TestDatasetValidation:
    def test_rejects_mismatched_labels(self):
        with pytest.raises(DataError):
            Dataset(np.zeros((3, 2)), [0, 1], ("a", "b"))

    def test_rejects_bad_label_values(self):
        with pytest.raises(DataError):
            Dataset(np.zeros((2, 1)), [0, 2], ("a",))

    def test_rejects_name_count_mismatch(self):
        with pytest.raises(DataError):
            Dataset(np.zeros((2, 2)), [0, 1], ("a",))

    def test_arrays_are_immutable(self):
        ds = Dataset(np.zeros((2, 2)), [0, 1], ("a", "b"))
        with pytest.raises(ValueError):
            ds.features[0, 0] = 5.0
