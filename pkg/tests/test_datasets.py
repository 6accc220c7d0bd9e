import numpy as np
import pytest

from gtld.datasets import DATASETS, get_dataset, load_values


class TestBuiltins:
    def test_gauge_shape_and_checksum(self):
        g = get_dataset("gauge").as_array()
        assert g.shape == (74,)
        assert g.sum() == pytest.approx(183.318, abs=1e-9)
        assert g.min() == pytest.approx(1.312)
        assert g.max() == pytest.approx(3.585)

    def test_gauge_contains_repeated_run(self):
        # the source table repeats a five-value block; it ships verbatim
        g = get_dataset("gauge").as_array()
        block = (2.809, 2.818, 2.821, 2.848, 2.880)
        for v in block:
            assert np.count_nonzero(np.isclose(g, v)) >= 2

    def test_failure_shape_and_checksum(self):
        f = get_dataset("failure").as_array()
        assert f.shape == (50,)
        assert f.sum() == pytest.approx(391.051, abs=1e-9)
        assert f.min() == pytest.approx(0.013)
        assert f.max() == pytest.approx(48.105)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            get_dataset("nope")

    def test_registry_is_consistent(self):
        for name, ds in DATASETS.items():
            assert ds.name == name
            assert len(ds.values) == ds.as_array().size


class TestLoadValues:
    def test_builtin_name_shortcut(self):
        np.testing.assert_array_equal(
            load_values("gauge"), get_dataset("gauge").as_array()
        )

    def test_plain_file(self, tmp_path):
        p = tmp_path / "x.txt"
        p.write_text("# a comment\n1.0\n2.5\n\n3.0 # trailing\n")
        np.testing.assert_allclose(load_values(str(p)), [1.0, 2.5, 3.0])

    def test_csv_with_header(self, tmp_path):
        p = tmp_path / "x.csv"
        p.write_text("value\n0.5\n1.5\n")
        np.testing.assert_allclose(load_values(str(p)), [0.5, 1.5])

    def test_missing_file(self):
        with pytest.raises(OSError):
            load_values("/no/such/file.txt")

    def test_garbage_content(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("1.0\nhello\nworld\n")
        with pytest.raises(ValueError):
            load_values(str(p))
