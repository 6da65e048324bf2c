"""Exception hierarchy shared by every layer of the AQQP toolkit.

Each error class carries the process exit code the CLI maps it to, so command
handlers can translate failures without inspecting messages.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pathlib import Path


class AqqpError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


class InvalidArgumentError(AqqpError, ValueError):
    """A parameter is outside its documented domain."""

    exit_code = 2


class RangeError(InvalidArgumentError):
    """A displacement falls outside the range covered by a pattern table."""


class InsufficientDataError(AqqpError):
    """Too few samples or support points for the requested statistic."""

    exit_code = 3


class NumericalConvergenceError(AqqpError):
    """A quadrature or fit did not reach its tolerance."""

    exit_code = 4


class DataIOError(AqqpError, OSError):
    """Reading or writing a data file failed."""

    exit_code = 5

    def __init__(self, path: Path | str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = str(path)


class CalibrationInconsistencyError(AqqpError):
    """Fitted calibration coefficients contradict the noise model."""

    exit_code = 6


class EfficiencyRejectedError(CalibrationInconsistencyError):
    """Records were rejected because their detection efficiency is too low."""

    def __init__(self, efficiency: float, threshold: float, n_atoms: int) -> None:
        super().__init__(
            f"efficiency {efficiency:.4f} at N_a={n_atoms} is below threshold "
            f"{threshold:.4f} (use --force to convert anyway)"
        )
        self.efficiency = efficiency
        self.threshold = threshold
        self.n_atoms = n_atoms
