"""Core data models for the AQQP toolkit."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from aqqp.core.errors import InvalidArgumentError


def _frozen_array(values: object) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class DatasetMeta:
    """Provenance of a set of normalized quadrature samples."""

    source: str = "unknown"
    calibration_id: str | None = None
    efficiency: float | None = None
    n_atoms: int | None = None
    description: str = ""

    def to_dict(self) -> dict:
        """Convert metadata to a JSON-serializable dictionary."""
        return {
            "source": self.source,
            "calibration_id": self.calibration_id,
            "efficiency": self.efficiency,
            "n_atoms": self.n_atoms,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> DatasetMeta:
        """Build metadata from a dictionary, ignoring unknown keys."""
        return cls(
            source=str(payload.get("source", "unknown")),
            calibration_id=payload.get("calibration_id"),
            efficiency=payload.get("efficiency"),
            n_atoms=payload.get("n_atoms"),
            description=str(payload.get("description", "")),
        )


@dataclass(frozen=True, eq=False)
class QuadratureDataset:
    """Measured or simulated quadrature values in ground-state units.

    Attributes:
        samples: Normalized quadrature values; the ground state has unit variance.
        angle: Quadrature angle in radians, if known. Only one angle per dataset.
        meta: Provenance record.
    """

    samples: np.ndarray
    angle: float | None = None
    meta: DatasetMeta = field(default_factory=DatasetMeta)

    def __post_init__(self) -> None:
        samples = _frozen_array(self.samples)
        if samples.size == 0:
            raise InvalidArgumentError("quadrature dataset is empty")
        if not np.all(np.isfinite(samples)):
            raise InvalidArgumentError("quadrature dataset contains NaN or Inf")
        object.__setattr__(self, "samples", samples)

    @property
    def n_samples(self) -> int:
        """Number of samples N."""
        return int(self.samples.size)

    def concatenate(self, other: QuadratureDataset) -> QuadratureDataset:
        """Return a dataset holding this dataset's samples followed by ``other``'s."""
        meta = replace(self.meta, source=f"{self.meta.source}+{other.meta.source}")
        return QuadratureDataset(
            samples=np.concatenate([self.samples, other.samples]),
            angle=self.angle,
            meta=meta,
        )


@dataclass(frozen=True)
class RawRecord:
    """One two-pulse phase-shift measurement.

    Attributes:
        cycle_id: Experimental cycle index; defines time order.
        n_atoms: Number of atoms N_a in the ensemble.
        phi1: Phase shift of the conditioning QND pulse (rad).
        phi2: Phase shift of the verification pulse (rad).
    """

    cycle_id: int
    n_atoms: int
    phi1: float
    phi2: float

    def __post_init__(self) -> None:
        if self.n_atoms < 0:
            raise InvalidArgumentError(f"n_atoms must be >= 0, got {self.n_atoms}")
        if not (np.isfinite(self.phi1) and np.isfinite(self.phi2)):
            raise InvalidArgumentError(f"non-finite phase in cycle {self.cycle_id}")


@dataclass(frozen=True, eq=False)
class AqqpEstimate:
    """Sampled AQQP values on a grid of quadrature values.

    Attributes:
        phi_grid: Quadrature values j_phi, strictly increasing.
        p: Estimated p_Omega(j_phi).
        se: Standard error of each estimate.
        width: Filter width w.
        n_samples: Number of samples the estimate was built from.
    """

    phi_grid: np.ndarray
    p: np.ndarray
    se: np.ndarray
    width: float
    n_samples: int

    def __post_init__(self) -> None:
        phi_grid = _frozen_array(self.phi_grid)
        p = _frozen_array(self.p)
        se = _frozen_array(self.se)
        if not (phi_grid.size == p.size == se.size):
            raise InvalidArgumentError("phi_grid, p and se must have equal length")
        if np.any(np.diff(phi_grid) <= 0):
            raise InvalidArgumentError("phi_grid must be strictly increasing")
        if np.any(se <= 0):
            raise InvalidArgumentError("standard errors must be positive")
        object.__setattr__(self, "phi_grid", phi_grid)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "se", se)

    @property
    def ratio(self) -> np.ndarray:
        """Pointwise p / se."""
        return self.p / self.se


@dataclass(frozen=True, eq=False)
class SignificanceScan:
    """Negativity significance as a function of the filter width."""

    widths: np.ndarray
    sigma: np.ndarray
    argmin_phi: np.ndarray

    def __post_init__(self) -> None:
        widths = _frozen_array(self.widths)
        sigma = _frozen_array(self.sigma)
        argmin_phi = _frozen_array(self.argmin_phi)
        if not (widths.size == sigma.size == argmin_phi.size):
            raise InvalidArgumentError("scan arrays must have equal length")
        if np.any(np.diff(widths) <= 0):
            raise InvalidArgumentError("scan widths must be strictly increasing")
        if not np.all(np.isfinite(sigma)):
            raise InvalidArgumentError("significance values must be finite")
        object.__setattr__(self, "widths", widths)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "argmin_phi", argmin_phi)

    def best(self) -> tuple[float, float, float]:
        """Return (width, sigma, at_phi) of the most negative significance."""
        index = int(np.argmin(self.sigma))
        return float(self.widths[index]), float(self.sigma[index]), float(self.argmin_phi[index])
