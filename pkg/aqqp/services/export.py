"""CSV and JSON exports of estimates, scans and analytic curves.

Every file carries the tool version and the settings hash: CSV files as ``#``
comment lines, JSON files as top-level fields.
"""

from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING

import pandas as pd

from aqqp import __version__
from aqqp.core.errors import DataIOError
from aqqp.core.hashing import stamp_lines
from aqqp.core.paths import PathResolver
from aqqp.services.estimator import significance

if TYPE_CHECKING:
    from pathlib import Path

    from aqqp.core.models import AqqpEstimate, QuadratureDataset, SignificanceScan

LOGGER = logging.getLogger("aqqp.services.export")


def _write_csv(frame: pd.DataFrame, path: Path, settings_hash: str | None) -> Path:
    try:
        PathResolver.ensure_parent(path)
        with path.open("w", encoding="utf-8", newline="") as handle:
            for line in stamp_lines(settings_hash):
                handle.write(line + "\n")
            frame.to_csv(handle, index=False, lineterminator="\n")
    except OSError as e:
        raise DataIOError(path, f"cannot write CSV: {e.strerror or e}") from e
    return path


def _write_json(payload: dict, path: Path) -> Path:
    try:
        PathResolver.ensure_parent(path)
        with path.open("w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise DataIOError(path, f"cannot write JSON: {e.strerror or e}") from e
    return path


def estimate_summary(
    est: AqqpEstimate,
    settings_hash: str | None,
    data: QuadratureDataset | None = None,
) -> dict:
    """Summary of an estimate: Sigma, its location, N, w and provenance."""
    sigma, at_phi = significance(est)
    summary = {
        "tool": "aqqp",
        "version": __version__,
        "settings_hash": settings_hash,
        "width": est.width,
        "n_samples": est.n_samples,
        "sigma": sigma,
        "at_phi": at_phi,
        "grid_points": int(est.phi_grid.size),
    }
    if data is not None:
        summary["dataset"] = data.meta.to_dict()
    return summary


def write_estimate(
    est: AqqpEstimate,
    path: Path,
    settings_hash: str | None = None,
    data: QuadratureDataset | None = None,
) -> tuple[Path, Path]:
    """Write the estimate as CSV (j_phi, p, se) plus a JSON summary sidecar.

    Returns:
        Tuple of (csv_path, json_path)
    """
    frame = pd.DataFrame({"j_phi": est.phi_grid, "p": est.p, "se": est.se})
    _write_csv(frame, path, settings_hash)
    sidecar = _write_json(
        estimate_summary(est, settings_hash, data), PathResolver.get_sidecar_path(path)
    )
    LOGGER.info("Wrote estimate to %s", path)
    return path, sidecar


def write_scan(
    scan: SignificanceScan,
    path: Path,
    settings_hash: str | None = None,
    n_samples: int | None = None,
) -> tuple[Path, Path]:
    """Write a width scan as CSV (w, sigma, at_phi) plus a JSON summary sidecar."""
    frame = pd.DataFrame({"w": scan.widths, "sigma": scan.sigma, "at_phi": scan.argmin_phi})
    _write_csv(frame, path, settings_hash)
    best_width, best_sigma, best_phi = scan.best()
    payload = {
        "tool": "aqqp",
        "version": __version__,
        "settings_hash": settings_hash,
        "n_samples": n_samples,
        "widths": int(scan.widths.size),
        "best_width": best_width,
        "best_sigma": best_sigma,
        "best_at_phi": best_phi,
    }
    sidecar = _write_json(payload, PathResolver.get_sidecar_path(path))
    LOGGER.info("Wrote width scan to %s", path)
    return path, sidecar


def write_curves(
    columns: dict[str, object],
    path: Path,
    settings_hash: str | None = None,
) -> Path:
    """Write named equal-length columns (analytic curves, histograms) as CSV."""
    return _write_csv(pd.DataFrame(columns), path, settings_hash)
