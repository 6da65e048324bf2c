"""Fixed-grid quadrature shared by the filter, pattern and oracle code.

All reductions run row by row over C-contiguous blocks of a fixed size, so a
result never depends on how many worker threads computed it.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson

from aqqp.core.errors import InvalidArgumentError

if TYPE_CHECKING:
    from collections.abc import Callable

ROW_BLOCK = 64
GAUSS_ORDER = 16


def simpson_weights(n_points: int, step: float) -> np.ndarray:
    """Return composite Simpson weights for ``n_points`` equally spaced nodes.

    ``n_points`` must be odd (an even number of intervals). The explicit vector is
    for separable 2D integrals, which reduce to two matrix products.
    """
    if n_points < 3 or n_points % 2 == 0:
        raise InvalidArgumentError(f"Simpson's rule needs an odd node count >= 3, got {n_points}")
    weights = np.full(n_points, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    return weights * (step / 3.0)


def uniform_nodes(upper: float, max_step: float, multiple: int = 2) -> tuple[np.ndarray, float]:
    """Return a uniform grid on [0, upper] with spacing <= max_step.

    The interval count is a multiple of ``multiple`` (even by default, as Simpson's
    rule requires; 4 lets every other node form a coarser Simpson grid).
    """
    intervals = max(multiple, int(np.ceil(upper / max_step)))
    intervals += (-intervals) % multiple
    step = upper / intervals
    return step * np.arange(intervals + 1, dtype=np.float64), step


def gauss_legendre_unit(n_panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [0, 1].

    Returns:
        Tuple of (nodes, weights); weights sum to 1.
    """
    nodes, weights = leggauss(GAUSS_ORDER)
    offsets = np.arange(n_panels, dtype=np.float64) / n_panels
    unit_nodes = (offsets[:, None] + (nodes[None, :] + 1.0) / (2.0 * n_panels)).reshape(-1)
    unit_weights = np.tile(weights / (2.0 * n_panels), n_panels)
    return unit_nodes, unit_weights


def map_row_blocks(
    func: Callable[[slice], np.ndarray],
    n_rows: int,
    workers: int = 1,
    block: int = ROW_BLOCK,
) -> np.ndarray:
    """Apply ``func`` to fixed row blocks and concatenate the results in order."""
    slices = [slice(start, min(start + block, n_rows)) for start in range(0, n_rows, block)]
    if workers <= 1 or len(slices) <= 1:
        parts = [func(part) for part in slices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(func, slices))
    if not parts:
        return np.empty(0, dtype=np.float64)
    return np.concatenate(parts)


def cosine_transform(
    integrand: np.ndarray,
    k_grid: np.ndarray,
    step: float,
    x: np.ndarray,
    workers: int = 1,
) -> np.ndarray:
    """Return (1/pi) * integral_0^K integrand(k) cos(k x) dk by Simpson's rule.

    Args:
        integrand: Values of the even integrand on ``k_grid``
        k_grid: Odd-length uniform grid starting at 0
        step: Grid spacing
        x: Evaluation points
        workers: Worker threads

    Returns:
        Array of transform values, one per entry of ``x``
    """
    if k_grid.size < 3 or k_grid.size % 2 == 0:
        raise InvalidArgumentError(
            f"Simpson's rule needs an odd node count >= 3, got {k_grid.size}"
        )
    scaled = integrand / np.pi
    x = np.ascontiguousarray(x, dtype=np.float64).reshape(-1)

    def block(rows: slice) -> np.ndarray:
        phases = np.cos(np.multiply.outer(x[rows], k_grid))
        return simpson(phases * scaled, dx=step, axis=1)

    return map_row_blocks(block, x.size, workers)
