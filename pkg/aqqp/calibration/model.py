"""Calibration model: noise coefficients, contrast factor and detection efficiency."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from aqqp import __version__
from aqqp.calibration.noise_scaling import (
    differenced_groups,
    fit_noise_scaling,
    fit_zeta,
    group_by_atoms,
)
from aqqp.core.errors import (
    CalibrationInconsistencyError,
    DataIOError,
    InsufficientDataError,
    InvalidArgumentError,
)
from aqqp.core.hashing import settings_hash as hash_settings
from aqqp.core.paths import PathResolver

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from aqqp.core.models import RawRecord

LOGGER = logging.getLogger("aqqp.calibration.model")

DEFAULT_N1_PHOTONS = 4.1e7
DEFAULT_EPSILON = 1.02e-8
DEFAULT_PHOTON_RATIO = 1.5


@dataclass(frozen=True, eq=False)
class CalibrationModel:
    """Fitted noise model of the two-pulse measurement.

    Attributes:
        a0: First-pulse light shot-noise variance (rad^2).
        a1: Projection-noise coefficient kappa^2 (rad^2 per atom).
        a2: Technical-noise coefficient (rad^2 per atom^2).
        zeta: QND prediction gain.
        zeta_n_atoms: Atom number at which zeta was regressed.
        epsilon: Decoherence per photon.
        n1_photons: Photons in the first pulse.
        photon_ratio: n2 / n1.
        fit_covariance: 3x3 covariance of (a0, a1, a2).
    """

    a0: float
    a1: float
    a2: float
    zeta: float
    zeta_n_atoms: int
    epsilon: float = DEFAULT_EPSILON
    n1_photons: float = DEFAULT_N1_PHOTONS
    photon_ratio: float = DEFAULT_PHOTON_RATIO
    fit_covariance: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self) -> None:
        if not self.a0 > 0:
            raise CalibrationInconsistencyError(f"a0 must be positive, got {self.a0}")
        if not self.a1 > 0:
            raise CalibrationInconsistencyError(f"a1 must be positive, got {self.a1}")
        if self.a2 < 0:
            raise CalibrationInconsistencyError(f"a2 must be nonnegative, got {self.a2}")
        if self.zeta < 0:
            raise CalibrationInconsistencyError(f"zeta must be nonnegative, got {self.zeta}")
        if self.epsilon < 0 or not self.n1_photons > 0 or not self.photon_ratio > 0:
            raise InvalidArgumentError("epsilon, n1_photons and photon_ratio must be positive")
        covariance = np.asarray(self.fit_covariance, dtype=np.float64)
        if covariance.shape != (3, 3):
            raise InvalidArgumentError("fit_covariance must be a 3x3 matrix")
        object.__setattr__(self, "fit_covariance", covariance)

    @property
    def eta(self) -> float:
        """Contrast factor exp(-n1 epsilon)."""
        return math.exp(-self.n1_photons * self.epsilon)

    @property
    def second_shot_noise(self) -> float:
        """Second-pulse shot-noise variance a0 n1 / n2."""
        return self.a0 / self.photon_ratio

    def to_dict(self) -> dict:
        """Convert the model to a JSON-serializable dictionary."""
        return {
            "a0": self.a0,
            "a1": self.a1,
            "a2": self.a2,
            "zeta": self.zeta,
            "zeta_n_atoms": self.zeta_n_atoms,
            "epsilon": self.epsilon,
            "n1_photons": self.n1_photons,
            "photon_ratio": self.photon_ratio,
            "eta": self.eta,
            "fit_covariance": self.fit_covariance.tolist(),
        }

    @property
    def calibration_id(self) -> str:
        """Short digest identifying the fitted coefficients."""
        return hash_settings(self.to_dict())[:12]

    def to_json(self, path: Path, settings_hash: str | None = None) -> Path:
        """Write the model with version, settings hash and calibration id."""
        payload = {
            "tool": "aqqp",
            "version": __version__,
            "settings_hash": settings_hash,
            "calibration_id": self.calibration_id,
            "model": self.to_dict(),
        }
        try:
            PathResolver.ensure_parent(path)
            with path.open("w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as e:
            raise DataIOError(path, f"cannot write calibration: {e.strerror or e}") from e
        LOGGER.info("Saved calibration %s to %s", self.calibration_id, path)
        return path

    @classmethod
    def from_json(cls, path: Path) -> CalibrationModel:
        """Load a model written by :meth:`to_json`."""
        if not path.exists():
            raise DataIOError(path, "calibration file not found")
        try:
            with path.open(encoding="utf-8") as f:
                payload = json.load(f)
            fields = payload["model"]
            return cls(
                a0=float(fields["a0"]),
                a1=float(fields["a1"]),
                a2=float(fields["a2"]),
                zeta=float(fields["zeta"]),
                zeta_n_atoms=int(fields["zeta_n_atoms"]),
                epsilon=float(fields["epsilon"]),
                n1_photons=float(fields["n1_photons"]),
                photon_ratio=float(fields["photon_ratio"]),
                fit_covariance=np.array(fields["fit_covariance"], dtype=np.float64),
            )
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
            raise DataIOError(path, f"invalid calibration file: {e}") from e


def acs_variance(model: CalibrationModel, n_atoms: float) -> float:
    """Second-pulse variance of an atomic coherent state: a0/ratio + a1 eta N_a."""
    return model.second_shot_noise + model.a1 * model.eta * n_atoms


def efficiency(model: CalibrationModel, n_atoms: float) -> float:
    """Effective detection efficiency (var_ACS(N_a) - var_ACS(0)) / var_ACS(N_a)."""
    if n_atoms < 0:
        raise InvalidArgumentError(f"n_atoms must be >= 0, got {n_atoms}")
    total = acs_variance(model, n_atoms)
    return (total - acs_variance(model, 0)) / total


def predicted_zeta(model: CalibrationModel, n_atoms: float) -> float:
    """Model-optimal QND gain sqrt(eta) (a1 N + a2 N^2) / (a0 + a1 N + a2 N^2)."""
    atomic = model.a1 * n_atoms + model.a2 * n_atoms**2
    return math.sqrt(model.eta) * atomic / (model.a0 + atomic)


def zeta_for(model: CalibrationModel, n_atoms: int) -> float:
    """Regressed zeta at its own atom number, the model prediction elsewhere."""
    if n_atoms == model.zeta_n_atoms:
        return model.zeta
    return predicted_zeta(model, n_atoms)


def noise_budget(model: CalibrationModel, n_atoms_grid: Sequence[float]) -> pd.DataFrame:
    """Tabulate the noise contributions over an atom-number grid.

    Returns:
        DataFrame with columns n_atoms, shot_noise, projection_noise,
        technical_noise, total_variance, acs_variance, efficiency
    """
    n_atoms = np.asarray(n_atoms_grid, dtype=np.float64)
    shot = np.full_like(n_atoms, model.a0)
    projection = model.a1 * n_atoms
    technical = model.a2 * n_atoms**2
    acs = model.second_shot_noise + model.a1 * model.eta * n_atoms
    return pd.DataFrame(
        {
            "n_atoms": n_atoms,
            "shot_noise": shot,
            "projection_noise": projection,
            "technical_noise": technical,
            "total_variance": shot + projection + technical,
            "acs_variance": acs,
            "efficiency": (acs - model.second_shot_noise) / acs,
        }
    )


def calibrate(
    records: Sequence[RawRecord],
    epsilon: float = DEFAULT_EPSILON,
    n1_photons: float = DEFAULT_N1_PHOTONS,
    photon_ratio: float = DEFAULT_PHOTON_RATIO,
    zeta_n_atoms: int | None = None,
) -> CalibrationModel:
    """Fit a calibration model from a record corpus.

    The noise coefficients come from drift-compensated first-pulse phases of
    every atom-number group; zeta is regressed at ``zeta_n_atoms`` (the largest
    atom number by default).

    Raises:
        InsufficientDataError: Fewer than three atom-number groups
        InvalidArgumentError: ``zeta_n_atoms`` has no records
        CalibrationInconsistencyError: The fit contradicts the noise model
    """
    if not records:
        raise InsufficientDataError("no records to calibrate")
    grouped = group_by_atoms(records)
    target = max(grouped) if zeta_n_atoms is None else int(zeta_n_atoms)
    if target not in grouped:
        raise InvalidArgumentError(f"no records at N_a={target} for zeta regression")
    fit = fit_noise_scaling(differenced_groups(records))
    zeta = fit_zeta(grouped[target])
    if zeta < 0:
        raise CalibrationInconsistencyError(f"regressed zeta={zeta:.4g} is negative")
    model = CalibrationModel(
        a0=fit.a0,
        a1=fit.a1,
        a2=fit.a2,
        zeta=zeta,
        zeta_n_atoms=target,
        epsilon=epsilon,
        n1_photons=n1_photons,
        photon_ratio=photon_ratio,
        fit_covariance=fit.covariance,
    )
    LOGGER.info(
        "Calibrated: eta=%.4f, zeta=%.4f at N_a=%d, efficiency %.4f",
        model.eta, zeta, target, efficiency(model, target),
    )
    return model
