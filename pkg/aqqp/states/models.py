"""Single-mode state models in ground-state-normalized quadrature units."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from aqqp.core.errors import InvalidArgumentError


class StateKind(Enum):
    """Families of states with closed-form quadrature statistics."""

    GAUSSIAN = "gaussian"
    SINGLE_EXCITATION = "single_excitation"


@dataclass(frozen=True)
class StateModel:
    """A state described through its measured-quadrature statistics.

    Attributes:
        kind: State family.
        variance: Quadrature variance V of a Gaussian state (1 for the ground state).
        mean: Quadrature mean of a Gaussian state.
        conjugate_variance: Variance of the conjugate quadrature; None selects 1/V
            for squeezed states (minimum uncertainty) and V for V >= 1 (thermal).
        efficiency: Detection efficiency e of a single excitation; the state is
            mixed with the ground state at weight 1 - e.
    """

    kind: StateKind
    variance: float = 1.0
    mean: float = 0.0
    conjugate_variance: float | None = None
    efficiency: float = 1.0

    def __post_init__(self) -> None:
        if self.kind is StateKind.GAUSSIAN:
            if not self.variance > 0:
                raise InvalidArgumentError(f"variance must be positive, got {self.variance}")
            if self.conjugate_variance is not None and not self.conjugate_variance > 0:
                raise InvalidArgumentError("conjugate_variance must be positive")
        if not 0 < self.efficiency <= 1:
            raise InvalidArgumentError(f"efficiency must lie in (0, 1], got {self.efficiency}")

    @classmethod
    def gaussian(
        cls,
        variance: float,
        mean: float = 0.0,
        conjugate_variance: float | None = None,
    ) -> StateModel:
        """Gaussian state with quadrature variance ``variance``."""
        return cls(
            kind=StateKind.GAUSSIAN,
            variance=float(variance),
            mean=float(mean),
            conjugate_variance=conjugate_variance,
        )

    @classmethod
    def single_excitation(cls, efficiency: float = 1.0) -> StateModel:
        """Single excitation, quadrature density x^2 e^{-x^2/2} / sqrt(2 pi)."""
        return cls(kind=StateKind.SINGLE_EXCITATION, efficiency=float(efficiency))

    @property
    def resolved_conjugate_variance(self) -> float:
        """Variance of the conjugate quadrature."""
        if self.kind is StateKind.SINGLE_EXCITATION:
            return self.quadrature_variance
        if self.conjugate_variance is not None:
            return self.conjugate_variance
        return 1.0 / self.variance if self.variance < 1.0 else self.variance

    @property
    def quadrature_variance(self) -> float:
        """Variance of the measured quadrature."""
        if self.kind is StateKind.GAUSSIAN:
            return self.variance
        return 1.0 + 2.0 * self.efficiency

    @property
    def is_rotationally_symmetric(self) -> bool:
        """True if the phase-space distribution depends only on the radius."""
        if self.kind is StateKind.SINGLE_EXCITATION:
            return True
        return self.mean == 0.0 and self.resolved_conjugate_variance == self.variance

    def describe(self) -> str:
        """Short human-readable label."""
        if self.kind is StateKind.GAUSSIAN:
            return f"gaussian(V={self.variance:g}, mean={self.mean:g})"
        return f"single_excitation(efficiency={self.efficiency:g})"


def with_detection_efficiency(state: StateModel, efficiency: float) -> StateModel:
    """Return the state seen through a detector of efficiency ``efficiency``.

    Added unit-variance Gaussian noise at weight 1 - e, followed by
    renormalization, acts as loss: V -> e V + (1 - e).
    """
    if not 0 < efficiency <= 1:
        raise InvalidArgumentError(f"efficiency must lie in (0, 1], got {efficiency}")
    if state.kind is StateKind.SINGLE_EXCITATION:
        return replace(state, efficiency=state.efficiency * efficiency)
    conjugate = state.resolved_conjugate_variance
    return StateModel.gaussian(
        variance=efficiency * state.variance + (1.0 - efficiency),
        mean=np.sqrt(efficiency) * state.mean,
        conjugate_variance=efficiency * conjugate + (1.0 - efficiency),
    )


def variance_from_db(db_below: float) -> float:
    """Convert a squeezing level in dB below the ground-state noise to a variance."""
    return float(10.0 ** (-db_below / 10.0))


def db_from_variance(variance: float) -> float:
    """Convert a quadrature variance to dB below the ground-state noise."""
    if not variance > 0:
        raise InvalidArgumentError(f"variance must be positive, got {variance}")
    return float(-10.0 * np.log10(variance))
