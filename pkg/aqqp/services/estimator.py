"""Direct sampling of the AQQP and the negativity significance.

For normalized samples j_1..j_N the AQQP at j_phi is estimated by the empirical
mean of the pattern function f(j_k - j_phi), with standard error equal to the
empirical standard deviation over sqrt N.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from aqqp.core.errors import InsufficientDataError, InvalidArgumentError, RangeError
from aqqp.core.models import AqqpEstimate, SignificanceScan
from aqqp.filters.autocorrelation import make_filter
from aqqp.filters.quadrature import map_row_blocks
from aqqp.pattern.cache import PatternCache

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from aqqp.core.config import AnalysisConfig
    from aqqp.core.models import QuadratureDataset
    from aqqp.pattern.table import PatternTable

LOGGER = logging.getLogger("aqqp.services.estimator")

_PROGRESS_THRESHOLD = 3
# Filter widths accepted by scans.
WIDTH_RANGE = (0.1, 3.0)
# Negative lobes of a squeezed state filtered at width w lie near |j_phi| = 3.3 / w.
LOBE_REACH = 4.0


def _iter_with_progress(items: Sequence[float], description: str):
    if len(items) <= _PROGRESS_THRESHOLD:
        return items

    try:
        from tqdm import tqdm
    except ImportError:
        return items

    return tqdm(items, desc=description, unit="width")


def _check_range(samples: np.ndarray, phi_grid: np.ndarray, x_max: float) -> None:
    reach = max(
        float(samples.max() - phi_grid.min()),
        float(phi_grid.max() - samples.min()),
    )
    if reach > x_max:
        raise RangeError(
            f"largest displacement {reach:.4g} exceeds the pattern table range "
            f"x_max={x_max}; widen x_max or narrow the j_phi grid"
        )


def reaching_grid(
    phi_grid: Sequence[float] | np.ndarray, width: float, limit: float
) -> np.ndarray:
    """Extend a uniform j_phi grid outward until it covers +-LOBE_REACH / width.

    New points continue the grid in its own step and never pass +-limit; grids
    already wide enough, and single-point grids, come back unchanged.
    """
    grid = np.asarray(phi_grid, dtype=np.float64).reshape(-1)
    if grid.size < 2:
        return grid
    step = float(grid[1] - grid[0])
    half = min(LOBE_REACH / width, limit)
    below = max(0, math.floor((grid[0] + half) / step + 1e-9))
    above = max(0, math.floor((half - grid[-1]) / step + 1e-9))
    return np.concatenate(
        [
            grid[0] - step * np.arange(below, 0, -1),
            grid,
            grid[-1] + step * np.arange(1, above + 1),
        ]
    )


def _mean_and_se(values: np.ndarray) -> tuple[float, float]:
    """Correctly rounded mean and two-pass standard error of one row."""
    n = values.size
    mean = math.fsum(values) / n
    spread = math.fsum((values - mean) ** 2) / (n - 1)
    return mean, math.sqrt(spread / n)


def estimate_aqqp(
    data: QuadratureDataset,
    table: PatternTable,
    phi_grid: Sequence[float] | np.ndarray,
    workers: int = 1,
) -> AqqpEstimate:
    """Estimate p_Omega(j_phi) at every grid point.

    Sums are correctly rounded, so the estimate does not depend on sample
    order or on the number of workers.

    Args:
        data: Normalized samples (N >= 2)
        table: Pattern table of the filter
        phi_grid: Quadrature values j_phi
        workers: Worker threads over grid blocks

    Returns:
        AqqpEstimate

    Raises:
        InsufficientDataError: Fewer than two samples, or zero spread at a grid point
        RangeError: A displacement j_k - j_phi falls outside the table
    """
    phi_grid = np.asarray(phi_grid, dtype=np.float64).reshape(-1)
    if phi_grid.size == 0:
        raise InvalidArgumentError("j_phi grid is empty")
    if np.any(np.diff(phi_grid) <= 0):
        raise InvalidArgumentError("j_phi grid must be strictly increasing")
    samples = data.samples
    if data.n_samples < 2:
        raise InsufficientDataError(
            "the standard error needs at least 2 samples, got 1"
        )
    _check_range(samples, phi_grid, table.x_max)

    def block(rows: slice) -> np.ndarray:
        values = table(samples[None, :] - phi_grid[rows, None])
        return np.array([_mean_and_se(row) for row in values])

    stats = map_row_blocks(block, phi_grid.size, workers).reshape(-1, 2)
    p, se = stats[:, 0], stats[:, 1]
    if np.any(se <= 0):
        raise InsufficientDataError(
            f"pattern values have zero spread at j_phi={phi_grid[np.argmin(se)]:.4g}"
        )
    return AqqpEstimate(
        phi_grid=phi_grid,
        p=p,
        se=se,
        width=table.width,
        n_samples=data.n_samples,
    )


def significance(est: AqqpEstimate) -> tuple[float, float]:
    """Return (Sigma, at_phi): the minimum of p/se and its grid location.

    Ties go to the smallest j_phi.
    """
    ratio = est.ratio
    index = int(np.argmin(ratio))
    return float(ratio[index]), float(est.phi_grid[index])


def scan_width(
    data: QuadratureDataset,
    widths: Sequence[float] | np.ndarray,
    phi_grid: Sequence[float] | np.ndarray | Callable[[float], np.ndarray],
    table_for: Callable[[float], PatternTable],
    workers: int = 1,
) -> SignificanceScan:
    """Compute Sigma(w) for each width.

    Args:
        data: Normalized samples
        widths: Strictly increasing filter widths
        phi_grid: Quadrature values j_phi, or a function returning them per width
        table_for: Returns the pattern table of a width
        workers: Worker threads per estimate

    Returns:
        SignificanceScan
    """
    widths = np.asarray(widths, dtype=np.float64).reshape(-1)
    if widths.size == 0:
        raise InvalidArgumentError("width list is empty")
    if np.any(np.diff(widths) <= 0):
        raise InvalidArgumentError("widths must be strictly increasing")
    if widths[0] < WIDTH_RANGE[0] or widths[-1] > WIDTH_RANGE[1]:
        raise InvalidArgumentError(f"widths must lie in [{WIDTH_RANGE[0]}, {WIDTH_RANGE[1]}]")

    grid_for = phi_grid if callable(phi_grid) else lambda _: phi_grid
    sigma = np.empty(widths.size)
    at_phi = np.empty(widths.size)
    for index, width in enumerate(_iter_with_progress(list(widths), "Width scan")):
        estimate = estimate_aqqp(
            data, table_for(float(width)), grid_for(float(width)), workers
        )
        sigma[index], at_phi[index] = significance(estimate)
        LOGGER.debug("w=%.4g: Sigma=%.3f at j_phi=%.3f", width, sigma[index], at_phi[index])
    return SignificanceScan(widths=widths, sigma=sigma, argmin_phi=at_phi)


def empirical_density(
    data: QuadratureDataset,
    bins: int | Sequence[float] = 60,
    value_range: tuple[float, float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Histogram density of the samples.

    Returns:
        Tuple of (bin_centres, density)
    """
    density, edges = np.histogram(data.samples, bins=bins, range=value_range, density=True)
    return 0.5 * (edges[:-1] + edges[1:]), density


class AqqpEstimator:
    """Estimator bound to an analysis configuration and a pattern-table cache."""

    def __init__(self, config: AnalysisConfig, cache: PatternCache | None = None) -> None:
        """Initialize the estimator.

        Args:
            config: Numeric settings
            cache: Table cache; defaults to one in ``config.cache_dir``
        """
        self.config = config
        self.cache = cache or PatternCache(config.cache_dir, workers=config.workers)

    def table(self, width: float) -> PatternTable:
        """Return the (cached) pattern table of ``width``."""
        width = self.config.check_width(width)
        f = make_filter(
            width,
            rel_tol=self.config.rel_tol,
            kernel=self.config.kernel,
            memo_spacing=self.config.memo_spacing,
        )
        return self.cache.get_or_build(f, self.config.x_max, self.config.table_spacing)

    def estimate(
        self,
        data: QuadratureDataset,
        width: float,
        phi_grid: np.ndarray | None = None,
    ) -> AqqpEstimate:
        """Estimate the AQQP at ``width`` on the configured (or given) grid."""
        grid = self.config.phi_grid() if phi_grid is None else phi_grid
        return estimate_aqqp(data, self.table(width), grid, self.config.workers)

    def scan(
        self,
        data: QuadratureDataset,
        widths: Sequence[float] | np.ndarray | None = None,
        phi_grid: np.ndarray | None = None,
    ) -> SignificanceScan:
        """Scan Sigma(w) over the configured (or given) widths.

        Without an explicit grid, each width gets the configured grid extended by
        :func:`reaching_grid` as far as the pattern table allows.
        """
        widths = self.config.scan_widths() if widths is None else widths
        if phi_grid is not None:
            return scan_width(data, widths, phi_grid, self.table, self.config.workers)
        base = self.config.phi_grid()
        limit = self.config.x_max - float(np.max(np.abs(data.samples)))
        return scan_width(
            data,
            widths,
            lambda width: reaching_grid(base, width, limit),
            self.table,
            self.config.workers,
        )
