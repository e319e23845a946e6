"""Atomic result writers, float formatting and binomial intervals."""

import json
import math

import pytest

from rramsim.output import (
    Z_95,
    format_value,
    fraction_summary,
    wald_interval,
    write_csv_atomic,
    write_json_atomic,
)


def test_format_value_float_precision():
    assert format_value(0.1573) == "0.1573"
    assert format_value(1.0) == "1"
    assert format_value(160.0) == "160"
    assert format_value(1 / 3) == "0.3333333333"
    assert format_value(1.5e-12) == "1.5e-12"
    assert format_value(-0.0043) == "-0.0043"


def test_format_value_non_floats_pass_through():
    assert format_value(7) == "7"
    assert format_value("settled") == "settled"
    assert format_value(True) == "True"


def test_write_csv_atomic(tmp_path):
    path = tmp_path / "sub" / "out.csv"
    write_csv_atomic(path, ["a", "b"], [[1, 0.5], ["x", 2.0]])
    data = path.read_bytes()
    assert data == b"a,b\n1,0.5\nx,2\n"
    assert not path.with_name(path.name + ".tmp").exists()


def test_write_csv_failure_leaves_no_partial_file(tmp_path):
    path = tmp_path / "out.csv"

    def bad_rows():
        yield [1, 2]
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        write_csv_atomic(path, ["a", "b"], bad_rows())
    assert not path.exists()
    assert list(tmp_path.iterdir()) == []


def test_write_json_atomic(tmp_path):
    path = tmp_path / "summary.json"
    write_json_atomic(path, {"b": 2, "a": [1.5, None]})
    text = path.read_text()
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')  # keys sorted
    assert json.loads(text) == {"b": 2, "a": [1.5, None]}
    assert list(tmp_path.iterdir()) == [path]


def test_wald_interval_values():
    lo, hi = wald_interval(50, 100)
    half = Z_95 * math.sqrt(0.25 / 100)
    assert lo == 0.5 - half
    assert hi == 0.5 + half
    # Degenerate fractions clip to the unit interval.
    assert wald_interval(0, 64) == (0.0, 0.0)
    assert wald_interval(64, 64) == (1.0, 1.0)
    # Near-degenerate ones clip on one side only.
    lo, hi = wald_interval(1, 10)
    assert lo == 0.0
    assert 0.1 < hi < 0.29


def test_wald_interval_validation():
    with pytest.raises(ValueError):
        wald_interval(1, 0)
    with pytest.raises(ValueError):
        wald_interval(-1, 10)
    with pytest.raises(ValueError):
        wald_interval(11, 10)


def test_fraction_summary_shape():
    summary = fraction_summary(3, 8)
    assert summary["count"] == 3
    assert summary["total"] == 8
    assert summary["fraction"] == 3 / 8
    assert summary["ci95"][0] <= 3 / 8 <= summary["ci95"][1]
    assert summary["ci95"] == list(wald_interval(3, 8))
