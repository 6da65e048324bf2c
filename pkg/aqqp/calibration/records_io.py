"""Reading and writing two-pulse record files.

Record files are CSV with the header ``cycle_id,n_atoms,phi1,phi2``; lines
starting with ``#`` are comments and carry the provenance stamp.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import pandas as pd

from aqqp.core.errors import DataIOError
from aqqp.core.hashing import stamp_lines
from aqqp.core.models import RawRecord
from aqqp.core.paths import PathResolver

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path

LOGGER = logging.getLogger("aqqp.calibration.records_io")

RECORD_COLUMNS = ("cycle_id", "n_atoms", "phi1", "phi2")


def records_to_frame(records: Iterable[RawRecord]) -> pd.DataFrame:
    """Convert records to a DataFrame with the record-file columns."""
    rows = [(r.cycle_id, r.n_atoms, r.phi1, r.phi2) for r in records]
    frame = pd.DataFrame(rows, columns=list(RECORD_COLUMNS))
    return frame.astype({"cycle_id": "int64", "n_atoms": "int64"})


def frame_to_records(frame: pd.DataFrame) -> list[RawRecord]:
    """Convert a record DataFrame back to RawRecord objects."""
    return [
        RawRecord(
            cycle_id=int(row.cycle_id),
            n_atoms=int(row.n_atoms),
            phi1=float(row.phi1),
            phi2=float(row.phi2),
        )
        for row in frame.itertuples(index=False)
    ]


def write_records(
    records: Iterable[RawRecord],
    path: Path,
    settings_hash: str | None = None,
    extra: dict[str, object] | None = None,
) -> Path:
    """Write records to ``path`` in the record-file format.

    Raises:
        DataIOError: The file cannot be written
    """
    frame = records_to_frame(records)
    try:
        PathResolver.ensure_parent(path)
        with path.open("w", encoding="utf-8", newline="") as handle:
            for line in stamp_lines(settings_hash, extra):
                handle.write(line + "\n")
            frame.to_csv(handle, index=False, lineterminator="\n")
    except OSError as e:
        raise DataIOError(path, f"cannot write records: {e.strerror or e}") from e
    LOGGER.info("Wrote %d records to %s", len(frame), path)
    return path


def read_records(path: Path) -> list[RawRecord]:
    """Read a record file.

    Raises:
        DataIOError: Missing, unreadable or malformed file
    """
    if not path.exists():
        raise DataIOError(path, "record file not found")
    try:
        frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataIOError(path, f"cannot parse records: {e}") from e

    missing = [column for column in RECORD_COLUMNS if column not in frame.columns]
    if missing:
        raise DataIOError(path, f"missing columns: {', '.join(missing)}")
    if frame[list(RECORD_COLUMNS)].isna().any().any():
        raise DataIOError(path, "record file contains empty or non-numeric fields")
    try:
        records = frame_to_records(frame[list(RECORD_COLUMNS)])
    except (ValueError, TypeError) as e:
        raise DataIOError(path, f"invalid record: {e}") from e
    LOGGER.debug("Read %d records from %s", len(records), path)
    return records
