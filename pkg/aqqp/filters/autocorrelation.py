"""Autocorrelation filters Omega_w(k) with a nonnegative Fourier transform.

Omega_w(k) = N^-1 * integral omega(k') omega(k' + k/w) dk', N = integral omega^2.
Being an autocorrelation, Omega_w is even, peaks at Omega_w(0) = 1 and has a
nonnegative Fourier transform for every width w.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from aqqp.core.errors import InvalidArgumentError, NumericalConvergenceError
from aqqp.filters.base import BaseKernel, get_kernel
from aqqp.filters.quadrature import cosine_transform, gauss_legendre_unit, uniform_nodes

LOGGER = logging.getLogger("aqqp.filters.autocorrelation")

MIN_WIDTH = 0.1
DEFAULT_REL_TOL = 1e-9
DEFAULT_MEMO_SPACING = 0.001
# e^{k^2/2} Omega_w(k) must drop below this fraction of its maximum beyond the cutoff.
CUTOFF_FRACTION = 1e-12

_INITIAL_PANELS = 8
_MAX_PANELS = 1024
_LAG_BLOCK = 1024
# Values below this are treated as underflow when checking convergence.
_TINY = 1e-280


def _overlap_block(kernel: BaseKernel, lags: np.ndarray, n_panels: int) -> np.ndarray:
    """Raw autocorrelation integral at nonnegative lags for one panel count.

    The integrand omega(u - s/2) omega(u + s/2) is even in u, so only [0, R - s/2]
    is integrated.
    """
    half = 0.5 * lags
    upper = np.clip(kernel.support - half, 0.0, None)
    nodes, weights = gauss_legendre_unit(n_panels)
    u = upper[:, None] * nodes[None, :]
    exponent = kernel.exponent(u - half[:, None]) + kernel.exponent(u + half[:, None])
    return 2.0 * upper * (np.exp(-exponent) * weights).sum(axis=1)


def _converged_overlap(kernel: BaseKernel, lags: np.ndarray, rel_tol: float) -> np.ndarray:
    n_panels = _INITIAL_PANELS
    previous = _overlap_block(kernel, lags, n_panels)
    while n_panels < _MAX_PANELS:
        n_panels *= 2
        current = _overlap_block(kernel, lags, n_panels)
        significant = np.abs(current) > _TINY
        change = np.abs(current - previous)[significant] / np.abs(current[significant])
        if change.size == 0 or float(change.max()) < rel_tol:
            return current
        previous = current
    raise NumericalConvergenceError(
        f"autocorrelation quadrature did not reach rel_tol={rel_tol} "
        f"with {_MAX_PANELS} panels"
    )


def raw_autocorrelation(kernel: BaseKernel, lags: np.ndarray, rel_tol: float) -> np.ndarray:
    """Return the unnormalized integral omega(k') omega(k' + s) dk' at lags ``s``.

    Args:
        kernel: Base kernel omega
        lags: Lag values s (any sign; the integral is even in s)
        rel_tol: Relative tolerance; panels are doubled until met

    Returns:
        Array of integral values
    """
    lags = np.abs(np.asarray(lags, dtype=np.float64).reshape(-1))
    parts = [
        _converged_overlap(kernel, lags[start:start + _LAG_BLOCK], rel_tol)
        for start in range(0, lags.size, _LAG_BLOCK)
    ]
    return np.concatenate(parts) if parts else np.empty(0)


@lru_cache(maxsize=32)
def norm_constant(kernel_name: str, rel_tol: float) -> float:
    """Return N = integral omega(k)^2 dk for a registered kernel."""
    kernel = get_kernel(kernel_name)
    return float(raw_autocorrelation(kernel, np.zeros(1), rel_tol)[0])


@dataclass(frozen=True)
class FilterSpec:
    """A regularizing autocorrelation filter Omega_w.

    Attributes:
        kernel: Base kernel omega.
        width: Filter width w.
        norm_constant: N = integral omega^2.
        cutoff: K_max; Omega_w is treated as 0 for |k| > K_max.
        rel_tol: Relative tolerance used for every quadrature.
        memo_spacing: Node spacing of the memoized grid.
    """

    kernel: BaseKernel
    width: float
    norm_constant: float
    cutoff: float
    rel_tol: float
    memo_spacing: float
    _log_spline: CubicSpline = field(repr=False, compare=False)

    def __call__(self, k: np.ndarray | float) -> np.ndarray:
        """Shorthand for :func:`eval_filter`."""
        return eval_filter(self, k)

    def cache_key(self) -> dict[str, object]:
        """Parameters identifying this filter in cache keys and reports."""
        return {
            "kernel": self.kernel.cache_key(),
            "width": self.width,
            "rel_tol": self.rel_tol,
            "memo_spacing": self.memo_spacing,
        }


def make_filter(
    width: float,
    rel_tol: float = DEFAULT_REL_TOL,
    kernel: str | BaseKernel = "quartic",
    memo_spacing: float = DEFAULT_MEMO_SPACING,
) -> FilterSpec:
    """Build the autocorrelation filter of width ``width``.

    The filter is tabulated on a uniform k grid over [0, 2R w] (beyond which the
    kernel overlap is empty), the cutoff K_max is placed where e^{k^2/2} Omega_w(k)
    has fallen below CUTOFF_FRACTION of its maximum for good, and log Omega_w is
    splined on [0, K_max].

    Args:
        width: Filter width w > 0 (at least MIN_WIDTH)
        rel_tol: Relative quadrature tolerance in (0, 1)
        kernel: Kernel name or instance
        memo_spacing: Spacing of the memoized k grid

    Returns:
        Immutable FilterSpec

    Raises:
        InvalidArgumentError: Non-positive or too small width, bad tolerance
        NumericalConvergenceError: Quadrature failed to reach rel_tol
    """
    if not width > 0:
        raise InvalidArgumentError(f"filter width must be positive, got {width}")
    if width < MIN_WIDTH:
        raise InvalidArgumentError(f"filter width must be >= {MIN_WIDTH}, got {width}")
    if not 0 < rel_tol < 1:
        raise InvalidArgumentError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    if memo_spacing <= 0:
        raise InvalidArgumentError(f"memo_spacing must be positive, got {memo_spacing}")

    base = get_kernel(kernel) if isinstance(kernel, str) else kernel
    norm = norm_constant(base.name, rel_tol) if isinstance(kernel, str) else float(
        raw_autocorrelation(base, np.zeros(1), rel_tol)[0]
    )

    k_end = 2.0 * base.support * width
    count = int(np.ceil(k_end / memo_spacing)) + 1
    k_grid = memo_spacing * np.arange(count, dtype=np.float64)
    omega = raw_autocorrelation(base, k_grid / width, rel_tol) / norm

    with np.errstate(divide="ignore"):
        envelope = 0.5 * k_grid**2 + np.log(omega)
    floor = float(envelope.max()) + np.log(CUTOFF_FRACTION)
    above = np.flatnonzero(envelope >= floor)
    last = min(int(above[-1]) + 1, count - 1)
    cutoff = float(k_grid[last])

    kept = omega[: last + 1]
    if np.any(kept <= 0):
        raise NumericalConvergenceError(
            f"filter underflows inside its cutoff (w={width}); raise the precision"
        )
    # log Omega_w is even, so its slope vanishes at k = 0
    spline = CubicSpline(k_grid[: last + 1], np.log(kept), bc_type=((1, 0.0), "not-a-knot"))
    LOGGER.debug(
        "Built %s filter w=%.4g: N=%.10g, K_max=%.4g, %d memo nodes",
        base.name, width, norm, cutoff, last + 1,
    )
    return FilterSpec(
        kernel=base,
        width=float(width),
        norm_constant=norm,
        cutoff=cutoff,
        rel_tol=float(rel_tol),
        memo_spacing=float(memo_spacing),
        _log_spline=spline,
    )


def eval_filter(
    f: FilterSpec,
    k: np.ndarray | float,
    *,
    exact: bool = False,
) -> np.ndarray | float:
    """Evaluate Omega_w(k).

    Args:
        f: Filter specification
        k: Scalar or array of k values
        exact: Integrate directly instead of interpolating the memo grid

    Returns:
        Filter values with the shape of ``k``; 0 for |k| > K_max
    """
    scalar = np.ndim(k) == 0
    magnitude = np.abs(np.asarray(k, dtype=np.float64))
    flat = magnitude.reshape(-1)
    values = np.zeros(flat.shape, dtype=np.float64)
    inside = flat <= f.cutoff
    if exact:
        values[inside] = (
            raw_autocorrelation(f.kernel, flat[inside] / f.width, f.rel_tol) / f.norm_constant
        )
    else:
        values[inside] = np.exp(f._log_spline(flat[inside]))
    values = values.reshape(magnitude.shape)
    return float(values) if scalar else values


def filter_grid(f: FilterSpec, max_step: float) -> tuple[np.ndarray, float, np.ndarray]:
    """Return (k_grid, step, Omega_w(k_grid)) on an odd-length grid over [0, K_max]."""
    k_grid, step = uniform_nodes(f.cutoff, max_step)
    return k_grid, step, eval_filter(f, k_grid)


def filter_fourier_transform(
    f: FilterSpec,
    x_grid: np.ndarray,
    workers: int = 1,
) -> np.ndarray:
    """Return (1/2 pi) integral Omega_w(k) e^{ikx} dk on ``x_grid``.

    By the autocorrelation theorem the exact result is nonnegative; numerical
    values are nonnegative up to quadrature error.
    """
    x_grid = np.asarray(x_grid, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(x_grid)):
        raise InvalidArgumentError("x_grid must be finite")
    reach = max(float(np.max(np.abs(x_grid), initial=0.0)), 1.0)
    max_step = min(f.memo_spacing * 4.0, 2.0 * np.pi / (200.0 * reach))
    k_grid, step, omega = filter_grid(f, max_step)
    return cosine_transform(omega, k_grid, step, x_grid, workers)
