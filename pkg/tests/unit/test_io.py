"""Tests for CSV/JSON output."""

import json

import numpy as np
import pytest

from levelspacing.errors import InvalidArgumentError
from levelspacing.samples import SpacingSample
from levelspacing.utils import dumps, read_csv, sidecar_path, write_csv, write_json


def test_csv_round_trip_is_bit_exact(tmp_path):
    """17 significant digits read back to the same doubles."""
    data = np.column_stack([np.arange(5) * 0.01, np.exp(-np.arange(5) / 3.0)])
    path = write_csv(tmp_path / "curve.csv", ["s", "P"], data, {"m": 200, "kernel": {"kind": "sine"}})

    metadata, columns, read = read_csv(path)

    assert metadata == {"kernel": {"kind": "sine"}, "m": 200}
    assert columns == ["s", "P"]
    np.testing.assert_array_equal(read, data)


def test_csv_layout(tmp_path):
    """Metadata line, then header, then rows."""
    path = write_csv(tmp_path / "x.csv", ["s"], np.array([0.5, 1.5]), {"n": 2})
    lines = path.read_text().splitlines()

    assert lines[0].startswith("# ")
    assert json.loads(lines[0][2:]) == {"n": 2}
    assert lines[1] == "s"
    assert lines[2:] == ["0.5", "1.5"]


def test_csv_without_metadata(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("s,P\n0,0\n0.1,0.2\n")

    metadata, columns, data = read_csv(path)

    assert metadata == {}
    assert columns == ["s", "P"]
    assert data.shape == (2, 2)


def test_csv_column_mismatch(tmp_path):
    with pytest.raises(InvalidArgumentError):
        write_csv(tmp_path / "bad.csv", ["a", "b"], np.zeros((3, 3)), {})


def test_json_handles_numpy(tmp_path):
    path = write_json(tmp_path / "out" / "r.json", {"x": np.float64(0.5), "v": np.arange(3), "p": tmp_path})

    data = json.loads(path.read_text())
    assert data["x"] == 0.5
    assert data["v"] == [0, 1, 2]
    assert data["p"] == str(tmp_path)
    assert dumps({"b": 1, "a": 2}, indent=None) == '{"a": 2, "b": 1}'


def test_sidecar_path(tmp_path):
    assert sidecar_path(tmp_path / "lsd.csv") == tmp_path / "lsd.json"


def test_spacing_sample_validation():
    sample = SpacingSample(np.array([0.5, 1.5]), scale=1.0, raw_mean=1.0)

    assert sample.n_kept == 2
    assert sample.mean == 1.0
    with pytest.raises(ValueError):
        sample.spacings[0] = 2.0
    with pytest.raises(InvalidArgumentError):
        SpacingSample(np.array([0.5, 0.0]), scale=1.0, raw_mean=1.0)
    with pytest.raises(InvalidArgumentError):
        SpacingSample(np.array([]), scale=1.0, raw_mean=1.0)
