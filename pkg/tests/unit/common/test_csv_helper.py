# External imports
import pandas as pd
import pytest

# Own imports
from common.exceptions import SchemaError
from common.helpers.csv_helper import read_csv, write_csv


def test_written_csv_carries_the_format_version(tmp_path):
    path = write_csv(pd.DataFrame({"a": [1.0 / 3.0], "b": ["x"]}), tmp_path / "nested" / "t.csv")

    assert path.read_text(encoding="utf-8") == "# format_version=1\na,b\n0.3333333333,x\n"


def test_round_trip_skips_the_version_line(tmp_path):
    path = write_csv(pd.DataFrame({"shot_id": ["007"], "z": [9.5]}), tmp_path / "t.csv")

    table = read_csv(path, ["shot_id", "z"], dtype={"shot_id": str})

    assert table.to_dict(orient="records") == [{"shot_id": "007", "z": 9.5}]


def test_missing_column_is_named(tmp_path):
    path = write_csv(pd.DataFrame({"shot_id": ["a"], "x": [1.0]}), tmp_path / "t.csv")

    with pytest.raises(SchemaError) as raised:
        read_csv(path, ["shot_id", "x", "z"])

    assert raised.value.column == "z"
    assert "'z'" in str(raised.value)


def test_empty_file_is_a_schema_error(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")

    with pytest.raises(SchemaError):
        read_csv(path)
