"""Noise-scaling decomposition and QND gain regression.

The variance of drift-compensated first-pulse phases is modeled as
var = a0 + a1 N_a + a2 N_a^2: light shot noise, projection noise and technical
noise. It is fitted by weighted least squares, the weight of each support point
being the chi-square variance 2 var^2 / (count - 1) of a sample variance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from aqqp.calibration.records_io import records_to_frame
from aqqp.core.errors import (
    CalibrationInconsistencyError,
    InsufficientDataError,
    InvalidArgumentError,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from aqqp.core.models import RawRecord

LOGGER = logging.getLogger("aqqp.calibration.noise_scaling")

MIN_SUPPORT_POINTS = 3
# Fitted coefficients may be negative by at most this many standard deviations.
CONSISTENCY_SIGMAS = 2.0
_MAX_REWEIGHTS = 10
_REWEIGHT_TOL = 1e-10


@dataclass(frozen=True)
class NoiseGroup:
    """Sample variance of drift-compensated phases at one atom number."""

    n_atoms: int
    variance: float
    count: int

    def __post_init__(self) -> None:
        if self.n_atoms < 0:
            raise InvalidArgumentError(f"n_atoms must be >= 0, got {self.n_atoms}")
        if self.count < 2:
            raise InsufficientDataError(
                f"group at N_a={self.n_atoms} has {self.count} values; need at least 2"
            )
        if not self.variance > 0:
            raise InvalidArgumentError(
                f"group at N_a={self.n_atoms} has non-positive variance {self.variance}"
            )


@dataclass(frozen=True, eq=False)
class NoiseScalingFit:
    """Fitted noise coefficients.

    Attributes:
        a0: Light shot-noise variance (rad^2).
        a1: Projection-noise coefficient kappa^2 (rad^2 per atom).
        a2: Technical-noise coefficient (rad^2 per atom^2), clamped at 0.
        covariance: 3x3 covariance of (a0, a1, a2).
        groups: Support points the fit used.
    """

    a0: float
    a1: float
    a2: float
    covariance: np.ndarray
    groups: tuple[NoiseGroup, ...]

    @property
    def std_errors(self) -> np.ndarray:
        """Standard errors of (a0, a1, a2)."""
        return np.sqrt(np.diag(self.covariance))

    def predict(self, n_atoms: np.ndarray | float) -> np.ndarray:
        """Model variance at ``n_atoms``."""
        n_atoms = np.asarray(n_atoms, dtype=np.float64)
        return self.a0 + self.a1 * n_atoms + self.a2 * n_atoms**2


def pair_differences(values: np.ndarray) -> np.ndarray:
    """Return (x_0 - x_1)/sqrt 2, (x_2 - x_3)/sqrt 2, ... over non-overlapping pairs."""
    usable = values.size - values.size % 2
    return (values[0:usable:2] - values[1:usable:2]) / np.sqrt(2.0)


def differenced_groups(records: Sequence[RawRecord]) -> list[NoiseGroup]:
    """Group first-pulse phases by atom number and pair-difference consecutive cycles.

    Differencing subsequent cycles removes slow drifts; a differenced value has
    the single-cycle variance.
    """
    frame = records_to_frame(records)
    if frame.empty:
        raise InsufficientDataError("no records to calibrate")
    groups = []
    for n_atoms, block in frame.sort_values("cycle_id").groupby("n_atoms", sort=True):
        differences = pair_differences(block["phi1"].to_numpy(dtype=np.float64))
        if differences.size < 2:
            LOGGER.warning("Skipping N_a=%d: only %d records", n_atoms, len(block))
            continue
        groups.append(
            NoiseGroup(
                n_atoms=int(n_atoms),
                variance=float(np.var(differences, ddof=1)),
                count=int(differences.size),
            )
        )
    return groups


def _weighted_fit(
    n_atoms: np.ndarray,
    variances: np.ndarray,
    counts: np.ndarray,
    model: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    scale = float(n_atoms.max())
    sigma = model * np.sqrt(2.0 / (counts - 1))
    coeffs, cov = np.polyfit(n_atoms / scale, variances, 2, w=1.0 / sigma, cov="unscaled")
    # polyfit orders highest power first; undo the abscissa scaling
    unscale = np.array([1.0 / scale**2, 1.0 / scale, 1.0])
    coeffs = (coeffs * unscale)[::-1]
    cov = (cov * np.outer(unscale, unscale))[::-1, ::-1]
    return coeffs, cov


def fit_noise_scaling(groups: Sequence[NoiseGroup]) -> NoiseScalingFit:
    """Fit var = a0 + a1 N_a + a2 N_a^2 to per-group variances.

    Weights start from the sample variances and are iteratively replaced by the
    model variances, which removes the bias of weighting by noisy estimates.

    Args:
        groups: Support points; at least three distinct atom numbers

    Returns:
        NoiseScalingFit with coefficients and covariance

    Raises:
        InsufficientDataError: Fewer than three distinct atom numbers
        CalibrationInconsistencyError: a0 or a1 not positive
    """
    groups = tuple(sorted(groups, key=lambda g: g.n_atoms))
    n_atoms = np.array([g.n_atoms for g in groups], dtype=np.float64)
    if np.unique(n_atoms).size < MIN_SUPPORT_POINTS:
        raise InsufficientDataError(
            f"noise scaling needs at least {MIN_SUPPORT_POINTS} distinct atom numbers, "
            f"got {np.unique(n_atoms).size}"
        )
    variances = np.array([g.variance for g in groups])
    counts = np.array([g.count for g in groups], dtype=np.float64)

    model = variances
    coeffs, cov = _weighted_fit(n_atoms, variances, counts, model)
    for _ in range(_MAX_REWEIGHTS):
        predicted = coeffs[0] + coeffs[1] * n_atoms + coeffs[2] * n_atoms**2
        if np.any(predicted <= 0):
            break
        updated, cov = _weighted_fit(n_atoms, variances, counts, predicted)
        change = np.max(np.abs(updated - coeffs) / np.maximum(np.abs(updated), 1e-300))
        coeffs = updated
        if change < _REWEIGHT_TOL:
            break

    a0, a1, a2 = (float(c) for c in coeffs)
    errors = np.sqrt(np.diag(cov))
    for name, value, error in (("a0", a0, errors[0]), ("a1", a1, errors[1])):
        if value <= 0:
            detail = "beyond" if value < -CONSISTENCY_SIGMAS * error else "within"
            raise CalibrationInconsistencyError(
                f"fitted {name}={value:.4g} is not positive ({detail} "
                f"{CONSISTENCY_SIGMAS:g} standard errors of {error:.3g})"
            )
    if a2 < 0:
        LOGGER.warning(
            "Fitted a2=%.3g (%.1f standard errors) is unphysical; clamping to 0",
            a2,
            a2 / errors[2],
        )
        a2 = 0.0

    LOGGER.info("Noise scaling: a0=%.4g a1=%.4g a2=%.4g", a0, a1, a2)
    return NoiseScalingFit(a0=a0, a1=a1, a2=a2, covariance=cov, groups=groups)


def fit_zeta(records: Sequence[RawRecord]) -> float:
    """Return zeta* = cov(phi1, phi2) / var(phi1), the minimizer of var(phi2 - zeta phi1).

    Raises:
        InsufficientDataError: Fewer than two records
        InvalidArgumentError: Mixed atom numbers or zero variance of phi1
    """
    frame = records_to_frame(records)
    if len(frame) < 2:
        raise InsufficientDataError(f"zeta regression needs at least 2 records, got {len(frame)}")
    if frame["n_atoms"].nunique() != 1:
        raise InvalidArgumentError("zeta regression needs records at a single atom number")
    phi1 = frame["phi1"].to_numpy(dtype=np.float64)
    phi2 = frame["phi2"].to_numpy(dtype=np.float64)
    covariance = np.cov(phi1, phi2, ddof=1)
    if covariance[0, 0] == 0:
        raise InvalidArgumentError("phi1 has zero variance; zeta is undefined")
    return float(covariance[0, 1] / covariance[0, 0])


def group_by_atoms(records: Sequence[RawRecord]) -> dict[int, list[RawRecord]]:
    """Split records by atom number, each group in cycle order."""
    grouped: dict[int, list[RawRecord]] = {}
    for record in sorted(records, key=lambda r: (r.n_atoms, r.cycle_id)):
        grouped.setdefault(record.n_atoms, []).append(record)
    return grouped

