"""Tests for record-file I/O."""

import pytest

from aqqp.calibration.records_io import read_records, write_records
from aqqp.core.errors import DataIOError
from aqqp.core.models import RawRecord

RECORDS = [
    RawRecord(cycle_id=0, n_atoms=290000, phi1=1.2345678901234567e-4, phi2=-3.3e-5),
    RawRecord(cycle_id=1, n_atoms=290000, phi1=-2.0e-4, phi2=1.0 / 3.0),
    RawRecord(cycle_id=2, n_atoms=0, phi1=0.0, phi2=7.0e-6),
]


def test_round_trip_is_exact(tmp_path):
    path = write_records(RECORDS, tmp_path / "nested" / "records.csv", settings_hash="abc")
    assert read_records(path) == RECORDS


def test_header_carries_stamp(tmp_path):
    path = write_records(RECORDS, tmp_path / "records.csv", "abc", extra={"seed": 4})
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# aqqp ")
    assert lines[1:4] == ["# settings_hash=abc", "# seed=4", "cycle_id,n_atoms,phi1,phi2"]


def test_missing_file(tmp_path):
    with pytest.raises(DataIOError, match="not found"):
        read_records(tmp_path / "absent.csv")


@pytest.mark.parametrize(
    ("content", "match"),
    [
        ("", "cannot parse"),
        ("cycle_id,n_atoms,phi1\n0,1,0.5\n", "missing columns: phi2"),
        ("cycle_id,n_atoms,phi1,phi2\n0,1,,0.5\n", "empty or non-numeric"),
        ("cycle_id,n_atoms,phi1,phi2\n0,1,abc,0.5\n", "invalid record"),
        ("cycle_id,n_atoms,phi1,phi2\n0,-5,0.1,0.5\n", "invalid record"),
    ],
)
def test_malformed_files(tmp_path, content, match):
    path = tmp_path / "records.csv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(DataIOError, match=match):
        read_records(path)


def test_comments_are_skipped(tmp_path):
    path = tmp_path / "records.csv"
    path.write_text(
        "# from the lab\ncycle_id,n_atoms,phi1,phi2\n# mid-file note\n3,10,0.5,0.25\n",
        encoding="utf-8",
    )
    assert read_records(path) == [RawRecord(cycle_id=3, n_atoms=10, phi1=0.5, phi2=0.25)]
