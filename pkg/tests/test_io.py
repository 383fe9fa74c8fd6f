import csv
import io

import numpy as np
import pytest

from markov_adiabatic.errors import ValidationError
from markov_adiabatic.io import (
    atomic_write,
    curve_csv,
    format_distribution,
    format_matrix,
    parse_distribution,
    parse_matrix,
    read_distribution,
    read_matrix,
    write_matrix,
)


def test_matrix_roundtrip_is_exact(tmp_path):
    M = np.random.default_rng(3).uniform(size=(5, 5)) / 7
    assert np.array_equal(parse_matrix(format_matrix(M)), M)
    write_matrix(tmp_path / "m.txt", M)
    assert np.array_equal(read_matrix(tmp_path / "m.txt"), M)


def test_distribution_roundtrip():
    v = np.array([1 / 3, 2 / 3])
    assert np.array_equal(parse_distribution(format_distribution(v)), v)


def test_parse_matrix_blank_lines_and_exponents():
    np.testing.assert_array_equal(parse_matrix("2\n\n1e-1 9E-1\n 0.5 0.5 \n"), [[0.1, 0.9], [0.5, 0.5]])


@pytest.mark.parametrize("text", [
    "",
    "x\n1\n",
    "0\n",
    "2\n1 0\n",
    "2\n1 0\n0\n",
    "2\n1 nan\n0 1\n",
    "2\n1 inf\n0 1\n",
    "2\n1 a\n0 1\n",
])
def test_parse_matrix_rejects(text):
    with pytest.raises(ValidationError):
        parse_matrix(text)


def test_parse_distribution_rejects():
    with pytest.raises(ValidationError):
        parse_distribution("0.5 0.5\n0.1\n")
    with pytest.raises(ValidationError):
        parse_distribution("0.5 NaN\n")


def test_missing_file(tmp_path):
    with pytest.raises(ValidationError) as exc:
        read_matrix(tmp_path / "nope.txt")
    assert exc.value.check == "read"
    with pytest.raises(ValidationError):
        read_distribution(tmp_path / "nope.txt")


def test_curve_csv_reparses():
    curve = np.array([[1, 0.4], [2, 0.04000000000000001]])
    text = curve_csv(curve)
    assert text.splitlines()[0] == "T,error"
    assert text.splitlines()[1] == "1,0.40000000000000002"
    rows = list(csv.reader(io.StringIO(text)))[1:]
    np.testing.assert_array_equal(np.array(rows, dtype=float), curve)
    assert curve_csv(np.array([[0.25, 0.1]])).splitlines()[1].startswith("0.25,")


def test_atomic_write_replaces_and_leaves_no_temp(tmp_path):
    target = tmp_path / "sub" / "out.csv"
    atomic_write(target, "a\n")
    atomic_write(target, "b\n")
    assert target.read_text() == "b\n"
    assert [p.name for p in target.parent.iterdir()] == ["out.csv"]
