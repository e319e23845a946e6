"""Loading and schema checking for the result tables."""

import pytest

from simfigs.tables import (SCHEMAS, SchemaMismatch, TableError,
                            group_indices, load_columns)


def test_every_kind_has_a_sample_and_matching_widths(samples):
    assert set(samples) == set(SCHEMAS)
    for kind, rows in samples.items():
        assert all(len(row) == len(SCHEMAS[kind]) for row in rows)


def test_load_returns_columns_as_written(sample_csv, samples):
    table = load_columns("relaxation", sample_csv("relaxation"))
    assert set(table) == set(SCHEMAS["relaxation"])
    assert table["strategy"][:2] == ["immediate", "immediate"]
    assert table["g"][0] == "78.1"
    lengths = {len(column) for column in table.values()}
    assert lengths == {len(samples["relaxation"])}


def test_unknown_kind_is_rejected(tmp_path):
    with pytest.raises(ValueError, match="unknown table kind"):
        load_columns("volcano", tmp_path / "whatever.csv")


def test_renamed_column_reports_both_sides_of_the_diff(sample_csv):
    header = list(SCHEMAS["relaxation"])
    header[header.index("g")] = "conductance"
    path = sample_csv("relaxation", header=header)
    with pytest.raises(SchemaMismatch) as excinfo:
        load_columns("relaxation", path)
    message = str(excinfo.value)
    assert "missing column(s):    g" in message
    assert "unexpected column(s): conductance" in message
    assert "expected: " + ",".join(SCHEMAS["relaxation"]) in message
    assert "found:    " + ",".join(header) in message


def test_dropped_column_reports_missing_only(sample_csv, samples):
    header = list(SCHEMAS["bec_time"])[:-1]
    path = sample_csv("bec_time", header=header,
                      rows=[row[:-1] for row in samples["bec_time"]])
    with pytest.raises(SchemaMismatch) as excinfo:
        load_columns("bec_time", path)
    message = str(excinfo.value)
    assert "missing column(s):    fraction" in message
    assert "unexpected" not in message


def test_reordered_header_is_still_a_mismatch(sample_csv):
    header = list(SCHEMAS["calibrate"])
    header[0], header[1] = header[1], header[0]
    path = sample_csv("calibrate", header=header)
    with pytest.raises(SchemaMismatch) as excinfo:
        load_columns("calibrate", path)
    assert "same columns, wrong order" in str(excinfo.value)


def test_wrong_kind_for_a_valid_file_is_a_mismatch(sample_csv):
    with pytest.raises(SchemaMismatch):
        load_columns("retention", sample_csv("relaxation"))


def test_zero_byte_file_is_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_bytes(b"")
    with pytest.raises(TableError, match="empty file"):
        load_columns("adder", path)


def test_header_only_file_is_rejected(sample_csv):
    with pytest.raises(TableError, match="no data rows"):
        load_columns("adder", sample_csv("adder", rows=[]))


def test_ragged_row_is_rejected_with_its_line_number(sample_csv, samples):
    rows = [samples["calibrate"][0], samples["calibrate"][1][:-1]]
    path = sample_csv("calibrate", rows=rows)
    with pytest.raises(TableError, match="line 3 has 4 fields"):
        load_columns("calibrate", path)


def test_blank_lines_are_skipped(sample_csv, samples):
    path = sample_csv("calibrate")
    with open(path, "a", encoding="utf-8") as handle:
        handle.write("\n\n")
    table = load_columns("calibrate", path)
    assert len(table["quantity"]) == len(samples["calibrate"])


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_columns("adder", tmp_path / "nope.csv")


def test_group_indices_preserves_first_seen_order():
    table = {"a": ["x", "y", "x", "y"], "b": ["1", "1", "2", "1"]}
    assert group_indices(table, "a") == [(("x",), [0, 2]), (("y",), [1, 3])]
    assert group_indices(table, "a", "b") == [
        (("x", "1"), [0]), (("y", "1"), [1, 3]), (("x", "2"), [2])]
