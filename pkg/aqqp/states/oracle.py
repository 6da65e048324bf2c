"""Analytic characteristic functions, AQQPs and 2D quasiprobabilities.

All functions work in ground-state-normalized quadrature units. They serve as
exact references for the sampled estimator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.special import j0
from scipy.stats import norm

from aqqp.core.errors import InvalidArgumentError, NumericalConvergenceError
from aqqp.filters.autocorrelation import FilterSpec, eval_filter
from aqqp.filters.quadrature import cosine_transform, simpson_weights, uniform_nodes
from aqqp.states.models import StateKind, StateModel

LOGGER = logging.getLogger("aqqp.states.oracle")

# Filtered characteristic function at K_max relative to its maximum.
DECAY_MARGIN = 1e-10
_RADIAL_SPACING = 0.005


@dataclass(frozen=True, eq=False)
class Quasiprob2D:
    """Filtered quasiprobability P_Omega(j_x, j_y) on a rectangular grid.

    Attributes:
        x_grid: j_x values.
        y_grid: j_y values.
        values: Array of shape (len(x_grid), len(y_grid)); values[i, j] = P(x_i, y_j).
    """

    x_grid: np.ndarray
    y_grid: np.ndarray
    values: np.ndarray


def _even_char_function(state: StateModel, k: np.ndarray) -> np.ndarray:
    """Characteristic function of the mean-free state (real and even)."""
    if state.kind is StateKind.GAUSSIAN:
        return np.exp(0.5 * (1.0 - state.variance) * k**2)
    return 1.0 - state.efficiency * k**2


def char_function(state: StateModel, k: np.ndarray | float) -> np.ndarray | float | complex:
    """Return Phi(k e^{i phi}) for the measured quadrature angle.

    Phi(k) = <e^{i k x}> e^{k^2/2}: e^{(1-V) k^2/2} for a mean-free Gaussian and
    1 - e k^2 for a single excitation. A nonzero mean contributes the phase
    e^{i k mean}, and only then is the result complex.
    """
    k_array = np.asarray(k, dtype=np.float64)
    values = _even_char_function(state, k_array)
    if state.kind is StateKind.GAUSSIAN and state.mean != 0.0:
        values = values * np.exp(1j * k_array * state.mean)
    if np.ndim(k) == 0:
        return complex(values) if np.iscomplexobj(values) else float(values)
    return values


def quadrature_density(state: StateModel, x: np.ndarray | float) -> np.ndarray:
    """Return the ordinary (unfiltered) probability density of the measured quadrature."""
    x = np.asarray(x, dtype=np.float64)
    if state.kind is StateKind.GAUSSIAN:
        return norm.pdf(x, loc=state.mean, scale=np.sqrt(state.variance))
    ground = norm.pdf(x)
    return (1.0 - state.efficiency) * ground + state.efficiency * x**2 * ground


def _check_decay(integrand: np.ndarray, label: str) -> None:
    peak = float(np.max(np.abs(integrand)))
    tail = float(np.abs(integrand[-1]))
    if not np.isfinite(peak) or tail > DECAY_MARGIN * peak:
        raise NumericalConvergenceError(
            f"filtered characteristic function of {label} has not decayed at K_max "
            f"(tail/peak={tail / peak if peak else float('inf'):.3g}); "
            "use a smaller filter width"
        )


def analytic_aqqp(
    state: StateModel,
    f: FilterSpec,
    phi_grid: np.ndarray,
    workers: int = 1,
) -> np.ndarray:
    """Return p_Omega(j_phi) = (1/2 pi) integral Phi(k) Omega_w(k) e^{-ik j_phi} dk.

    Raises:
        NumericalConvergenceError: Phi(k) Omega_w(k) has not decayed at K_max
    """
    phi_grid = np.asarray(phi_grid, dtype=np.float64).reshape(-1)
    shifted = phi_grid - (state.mean if state.kind is StateKind.GAUSSIAN else 0.0)
    reach = max(float(np.max(np.abs(shifted), initial=0.0)), 1.0)
    k_grid, step = uniform_nodes(f.cutoff, min(4.0 * f.memo_spacing, 2.0 * np.pi / (200.0 * reach)))
    integrand = _even_char_function(state, k_grid) * eval_filter(f, k_grid)
    _check_decay(integrand, state.describe())
    return cosine_transform(integrand, k_grid, step, shifted, workers)


def _radial_profile(
    state: StateModel,
    f: FilterSpec,
    r_max: float,
) -> CubicSpline:
    """Spline of P(r) = (1/2 pi) integral_0^K k g(k) J0(k r) dk for symmetric states."""
    reach = max(r_max, 1.0)
    k_grid, step = uniform_nodes(f.cutoff, min(4.0 * f.memo_spacing, 2.0 * np.pi / (200.0 * reach)))
    integrand = _even_char_function(state, k_grid) * eval_filter(f, k_grid)
    _check_decay(integrand, state.describe())
    weighted = k_grid * integrand / (2.0 * np.pi)

    radii, _ = uniform_nodes(reach, _RADIAL_SPACING)
    profile = simpson(j0(np.multiply.outer(radii, k_grid)) * weighted, dx=step, axis=1)
    return CubicSpline(radii, profile, bc_type=((1, 0.0), "not-a-knot"))


def _cartesian_values(
    state: StateModel,
    f: FilterSpec,
    x_grid: np.ndarray,
    y_grid: np.ndarray,
) -> np.ndarray:
    """P(x, y) = (1/pi^2) double integral over the positive quadrant, by Simpson's rule."""
    if state.kind is not StateKind.GAUSSIAN:
        raise InvalidArgumentError("non-symmetric 2D quasiprobabilities need a Gaussian state")
    x_shifted = x_grid - state.mean
    reach = max(float(np.max(np.abs(x_shifted))), float(np.max(np.abs(y_grid))), 1.0)
    k_grid, step = uniform_nodes(f.cutoff, min(0.02, 2.0 * np.pi / (100.0 * reach)))
    kx, ky = np.meshgrid(k_grid, k_grid, indexing="ij")
    exponent = 0.5 * (1.0 - state.variance) * kx**2
    exponent += 0.5 * (1.0 - state.resolved_conjugate_variance) * ky**2
    integrand = np.exp(exponent) * eval_filter(f, np.hypot(kx, ky))
    _check_decay(integrand[:, 0], state.describe())

    weights = simpson_weights(k_grid.size, step)
    weighted = integrand * weights[:, None] * weights[None, :]
    cos_x = np.cos(np.multiply.outer(x_shifted, k_grid))
    cos_y = np.cos(np.multiply.outer(y_grid, k_grid))
    return cos_x @ weighted @ cos_y.T / np.pi**2


def analytic_quasiprob2d(
    state: StateModel,
    f: FilterSpec,
    x_grid: np.ndarray,
    y_grid: np.ndarray,
) -> Quasiprob2D:
    """Return the filtered quasiprobability P_Omega(j_x, j_y) with radial filter Omega_w(|k|).

    The measured quadrature is j_x. Rotationally symmetric states use a radial
    Hankel integral; other Gaussian states use a Cartesian double integral with
    the conjugate variance along j_y.
    """
    x_grid = np.asarray(x_grid, dtype=np.float64).reshape(-1)
    y_grid = np.asarray(y_grid, dtype=np.float64).reshape(-1)
    if x_grid.size == 0 or y_grid.size == 0:
        raise InvalidArgumentError("2D grids must be nonempty")

    if state.is_rotationally_symmetric:
        radii = np.hypot(x_grid[:, None], y_grid[None, :])
        profile = _radial_profile(state, f, float(radii.max()))
        values = profile(radii)
    else:
        values = _cartesian_values(state, f, x_grid, y_grid)
    LOGGER.debug("2D quasiprobability of %s on %dx%d grid", state.describe(), *values.shape)
    return Quasiprob2D(x_grid=x_grid, y_grid=y_grid, values=values)
