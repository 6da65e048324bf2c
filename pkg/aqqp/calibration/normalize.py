"""Normalization of two-pulse records to ground-state quadrature units.

j = (phi2 - zeta phi1) / sqrt(var_ACS(eta N_a)). Records are used as measured,
without the cycle differencing applied during calibration.
"""

from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from aqqp.calibration.model import (
    CalibrationModel,
    acs_variance,
    efficiency,
    zeta_for,
)
from aqqp.calibration.noise_scaling import group_by_atoms
from aqqp.calibration.records_io import records_to_frame
from aqqp.core.errors import (
    DataIOError,
    EfficiencyRejectedError,
    InsufficientDataError,
    InvalidArgumentError,
)
from aqqp.core.hashing import stamp_lines
from aqqp.core.models import DatasetMeta, QuadratureDataset
from aqqp.core.paths import PathResolver

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from aqqp.core.models import RawRecord

LOGGER = logging.getLogger("aqqp.calibration.normalize")

DEFAULT_EFFICIENCY_THRESHOLD = 0.77


def normalize(
    records: Sequence[RawRecord],
    model: CalibrationModel,
    threshold: float = DEFAULT_EFFICIENCY_THRESHOLD,
    force: bool = False,
    zeta: float | None = None,
    source: str = "records",
) -> QuadratureDataset:
    """Convert records at a single atom number to normalized quadrature samples.

    Args:
        records: Records sharing one atom number
        model: Fitted calibration model
        threshold: Minimum detection efficiency
        force: Convert even if the efficiency is below ``threshold``
        zeta: QND gain; defaults to the model's gain for this atom number
        source: Provenance label

    Returns:
        QuadratureDataset whose metadata records efficiency and atom number

    Raises:
        InsufficientDataError: No records
        InvalidArgumentError: Mixed atom numbers
        EfficiencyRejectedError: Efficiency below threshold and not forced
    """
    if not records:
        raise InsufficientDataError("no records to normalize")
    frame = records_to_frame(records).sort_values("cycle_id", kind="stable")
    atom_numbers = frame["n_atoms"].unique()
    if atom_numbers.size != 1:
        raise InvalidArgumentError(
            f"normalization needs a single atom number, got {sorted(atom_numbers.tolist())}"
        )
    n_atoms = int(atom_numbers[0])

    measured = efficiency(model, n_atoms)
    if measured < threshold:
        if not force:
            raise EfficiencyRejectedError(measured, threshold, n_atoms)
        LOGGER.warning(
            "Efficiency %.4f at N_a=%d is below %.4f; converting anyway",
            measured, n_atoms, threshold,
        )

    gain = zeta_for(model, n_atoms) if zeta is None else float(zeta)
    phi1 = frame["phi1"].to_numpy(dtype=np.float64)
    phi2 = frame["phi2"].to_numpy(dtype=np.float64)
    samples = (phi2 - gain * phi1) / np.sqrt(acs_variance(model, n_atoms))
    meta = DatasetMeta(
        source=source,
        calibration_id=model.calibration_id,
        efficiency=float(measured),
        n_atoms=n_atoms,
        description=f"zeta={gain!r}",
    )
    LOGGER.debug("Normalized %d records at N_a=%d (zeta=%.4f)", samples.size, n_atoms, gain)
    return QuadratureDataset(samples=samples, angle=0.0, meta=meta)


def normalize_corpus(
    records: Sequence[RawRecord],
    model: CalibrationModel,
    threshold: float = DEFAULT_EFFICIENCY_THRESHOLD,
    source: str = "records",
) -> QuadratureDataset:
    """Normalize every atom-number group that passes the efficiency threshold.

    Each group uses its own zeta; passing groups are concatenated in order of
    increasing atom number.

    Raises:
        InsufficientDataError: No group passes the threshold
    """
    selected: list[QuadratureDataset] = []
    for n_atoms, group in group_by_atoms(records).items():
        if efficiency(model, n_atoms) < threshold:
            LOGGER.debug("Dropping N_a=%d (efficiency %.4f)", n_atoms, efficiency(model, n_atoms))
            continue
        selected.append(normalize(group, model, threshold=threshold, source=source))
    if not selected:
        raise InsufficientDataError(f"no atom-number group reaches efficiency {threshold:g}")

    samples = np.concatenate([d.samples for d in selected])
    efficiencies = [d.meta.efficiency or 0.0 for d in selected]
    meta = DatasetMeta(
        source=source,
        calibration_id=model.calibration_id,
        efficiency=float(min(efficiencies)),
        n_atoms=selected[0].meta.n_atoms if len(selected) == 1 else None,
        description="groups=" + ",".join(str(d.meta.n_atoms) for d in selected),
    )
    LOGGER.info("Selected %d of %d records in %d groups", samples.size, len(records), len(selected))
    return QuadratureDataset(samples=samples, angle=0.0, meta=meta)


def write_dataset(
    dataset: QuadratureDataset,
    path: Path,
    settings_hash: str | None = None,
) -> Path:
    """Write normalized samples as a ``jbar`` CSV with a JSON metadata sidecar."""
    sidecar = PathResolver.get_sidecar_path(path)
    payload = {
        "n_samples": dataset.n_samples,
        "angle": dataset.angle,
        "settings_hash": settings_hash,
        "meta": dataset.meta.to_dict(),
    }
    try:
        PathResolver.ensure_parent(path)
        with path.open("w", encoding="utf-8", newline="") as handle:
            for line in stamp_lines(settings_hash):
                handle.write(line + "\n")
            pd.DataFrame({"jbar": dataset.samples}).to_csv(handle, index=False, lineterminator="\n")
        with sidecar.open("w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise DataIOError(path, f"cannot write dataset: {e.strerror or e}") from e
    LOGGER.info("Wrote %d samples to %s", dataset.n_samples, path)
    return path


def read_dataset(path: Path) -> QuadratureDataset:
    """Read a ``jbar`` CSV and its sidecar (if present)."""
    if not path.exists():
        raise DataIOError(path, "dataset file not found")
    try:
        frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataIOError(path, f"cannot parse dataset: {e}") from e
    if "jbar" not in frame.columns:
        raise DataIOError(path, "missing column: jbar")

    meta = DatasetMeta(source=str(path))
    angle = None
    sidecar = PathResolver.get_sidecar_path(path)
    if sidecar.exists():
        try:
            with sidecar.open(encoding="utf-8") as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise DataIOError(sidecar, f"invalid sidecar: {e}") from e
        meta = DatasetMeta.from_dict(payload.get("meta", {}))
        angle = payload.get("angle")
    try:
        samples = frame["jbar"].to_numpy(dtype=np.float64)
        return QuadratureDataset(samples=samples, angle=angle, meta=meta)
    except (ValueError, TypeError) as e:
        raise DataIOError(path, f"invalid samples: {e}") from e


def is_dataset_file(path: Path) -> bool:
    """True if ``path`` holds normalized samples rather than raw records."""
    try:
        header = pd.read_csv(path, comment="#", nrows=0)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataIOError(path, f"cannot parse header: {e}") from e
    return "jbar" in header.columns
