"""Pattern-function tables for direct sampling of the AQQP.

The pattern function depends on the sample and the grid point only through the
displacement x = j_sample - j_phi:

    f(x) = (1/pi) integral_0^K_max e^{k^2/2} Omega_w(k) cos(k x) dk.

Tables hold f on a symmetric x grid and interpolate with a cubic spline.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from aqqp.core.errors import InvalidArgumentError, NumericalConvergenceError, RangeError
from aqqp.filters.autocorrelation import FilterSpec, eval_filter
from aqqp.filters.quadrature import cosine_transform, uniform_nodes

LOGGER = logging.getLogger("aqqp.pattern.table")

DEFAULT_X_MAX = 15.0
DEFAULT_SPACING = 0.005
MIN_X_MAX = 12.0
MAX_SPACING = 0.01
# Estimated Simpson error allowed, relative to max|f|.
TABLE_TOLERANCE = 1e-8
_MAX_REFINEMENTS = 4


@dataclass(frozen=True, eq=False)
class PatternTable:
    """Pattern function f_Omega tabulated on a displacement grid.

    Attributes:
        filter: Filter the pattern function belongs to.
        x_grid: Symmetric uniform displacement grid on [-x_max, x_max].
        values: f(x) on ``x_grid``.
        x_max: Half-range of the grid.
        spacing: Grid spacing.
    """

    filter: FilterSpec
    x_grid: np.ndarray
    values: np.ndarray
    x_max: float
    spacing: float
    _spline: CubicSpline = field(repr=False)

    @property
    def width(self) -> float:
        """Filter width w."""
        return self.filter.width

    @property
    def max_abs(self) -> float:
        """max |f| over the grid."""
        return float(np.max(np.abs(self.values)))

    @property
    def central_value(self) -> float:
        """f(0)."""
        return float(self.values[self.x_grid.size // 2])

    def __call__(self, displacement: np.ndarray | float) -> np.ndarray | float:
        """Interpolate f at ``displacement`` (checked against the range)."""
        x = np.asarray(displacement, dtype=np.float64)
        if x.size and float(np.max(np.abs(x))) > self.x_max:
            raise RangeError(
                f"displacement {float(np.max(np.abs(x))):.4g} exceeds table range "
                f"x_max={self.x_max}; widen x_max"
            )
        result = self._spline(x)
        return float(result) if np.ndim(displacement) == 0 else result


def symmetric_grid(x_max: float, spacing: float) -> np.ndarray:
    """Return the grid spacing * [-n..n] with exact mirror symmetry."""
    n_half = int(round(x_max / spacing))
    return spacing * np.arange(-n_half, n_half + 1, dtype=np.float64)


def from_values(
    f: FilterSpec,
    x_grid: np.ndarray,
    values: np.ndarray,
    spacing: float,
    x_max: float | None = None,
) -> PatternTable:
    """Assemble an immutable table from precomputed grid values.

    ``x_max`` defaults to the last grid node; pass the requested half-range so
    the table is cached under the same key it is looked up with.
    """
    x_grid = np.array(x_grid, dtype=np.float64)
    values = np.array(values, dtype=np.float64)
    if x_grid.shape != values.shape or x_grid.size < 5:
        raise InvalidArgumentError("table grid and values must match and hold >= 5 nodes")
    if not np.all(np.isfinite(values)):
        raise NumericalConvergenceError(f"pattern table for w={f.width} is not finite")
    x_grid.setflags(write=False)
    values.setflags(write=False)
    return PatternTable(
        filter=f,
        x_grid=x_grid,
        values=values,
        x_max=float(x_grid[-1] if x_max is None else x_max),
        spacing=float(spacing),
        _spline=CubicSpline(x_grid, values),
    )


def pattern_integrand(f: FilterSpec, k: np.ndarray) -> np.ndarray:
    """Return e^{k^2/2} Omega_w(k)."""
    k = np.asarray(k, dtype=np.float64)
    return np.exp(0.5 * k**2) * eval_filter(f, k)


def _half_table(f: FilterSpec, x_half: np.ndarray, x_max: float, workers: int) -> np.ndarray:
    max_step = 2.0 * np.pi / (200.0 * x_max)
    for _ in range(_MAX_REFINEMENTS):
        k_grid, step = uniform_nodes(f.cutoff, max_step, multiple=4)
        integrand = pattern_integrand(f, k_grid)
        fine = cosine_transform(integrand, k_grid, step, x_half, workers)
        coarse = cosine_transform(integrand[::2], k_grid[::2], 2.0 * step, x_half, workers)
        scale = float(np.max(np.abs(fine)))
        # Richardson: the Simpson error at step h is about (coarse - fine) / 15
        error = float(np.max(np.abs(coarse - fine))) / 15.0
        if np.isfinite(error) and error <= TABLE_TOLERANCE * scale:
            LOGGER.debug(
                "Pattern table w=%.4g: %d k nodes, estimated error %.3g of max|f|",
                f.width, k_grid.size, error / scale,
            )
            return fine
        max_step /= 2.0
    raise NumericalConvergenceError(
        f"oscillatory quadrature for the w={f.width} pattern table missed "
        f"tolerance {TABLE_TOLERANCE}"
    )


def build_pattern_table(
    f: FilterSpec,
    x_max: float = DEFAULT_X_MAX,
    spacing: float = DEFAULT_SPACING,
    workers: int = 1,
) -> PatternTable:
    """Tabulate the pattern function of filter ``f``.

    Args:
        f: Filter specification
        x_max: Grid half-range, at least MIN_X_MAX
        spacing: Grid spacing, at most MAX_SPACING
        workers: Worker threads for the cosine transform

    Returns:
        Immutable PatternTable, deterministic for fixed inputs

    Raises:
        InvalidArgumentError: x_max or spacing outside their ranges
        NumericalConvergenceError: The oscillatory quadrature missed its tolerance
    """
    if x_max < MIN_X_MAX:
        raise InvalidArgumentError(f"x_max must be >= {MIN_X_MAX}, got {x_max}")
    if not 0 < spacing <= MAX_SPACING:
        raise InvalidArgumentError(f"spacing must lie in (0, {MAX_SPACING}], got {spacing}")

    x_grid = symmetric_grid(x_max, spacing)
    centre = x_grid.size // 2
    half = _half_table(f, x_grid[centre:], x_max, workers)
    values = np.concatenate([half[:0:-1], half])
    return from_values(f, x_grid, values, spacing, x_max)


def eval_pattern(
    t: PatternTable,
    j_sample: np.ndarray | float,
    j_phi: np.ndarray | float,
) -> np.ndarray | float:
    """Return f_Omega(j_sample; j_phi, w) by interpolating the table.

    Raises:
        RangeError: |j_sample - j_phi| exceeds the table's x_max
    """
    return t(np.subtract(j_sample, j_phi))


def direct_pattern_value(f: FilterSpec, x: float) -> float:
    """Return f(x) by adaptive oscillatory quadrature (QAWO), bypassing the table."""
    scale = float(pattern_integrand(f, np.array([np.sqrt(2.0) * f.width**2]))[0])
    value, _ = quad(
        lambda k: float(pattern_integrand(f, np.array([k]))[0]),
        0.0,
        f.cutoff,
        weight="cos",
        wvar=float(x),
        limit=400,
        epsabs=1e-13 * max(scale, 1.0),
        epsrel=1e-11,
    )
    return value / np.pi
