"""Seeded quadrature sampling from analytic state models."""

from __future__ import annotations

import numpy as np

from aqqp.core.errors import InvalidArgumentError
from aqqp.core.models import DatasetMeta, QuadratureDataset
from aqqp.states.models import StateKind, StateModel

# Samples drawn per independent stream. Fixed so a dataset depends only on (seed, n).
BLOCK = 65536


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """Independent generator for one block of draws, derived from (seed, block_index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block_index,)))


def _draw_block(state: StateModel, rng: np.random.Generator, size: int) -> np.ndarray:
    if state.kind is StateKind.GAUSSIAN:
        return state.mean + np.sqrt(state.variance) * rng.standard_normal(size)

    # |x|^2 of the excited density x^2 e^{-x^2/2} / sqrt(2 pi) is chi-square with 3 dof
    excited = rng.random(size) < state.efficiency
    signs = np.where(rng.random(size) < 0.5, -1.0, 1.0)
    radial = np.sqrt(rng.chisquare(3, size))
    ground = rng.standard_normal(size)
    return np.where(excited, signs * radial, ground)


def sample_quadratures(state: StateModel, n: int, seed: int) -> QuadratureDataset:
    """Draw ``n`` i.i.d. quadrature values from ``state``.

    Args:
        state: State to sample
        n: Number of samples (>= 1)
        seed: Integer seed; the same seed always yields the same dataset

    Returns:
        QuadratureDataset with provenance ``simulated:<state>``
    """
    if n < 1:
        raise InvalidArgumentError(f"sample count must be >= 1, got {n}")
    if seed < 0:
        raise InvalidArgumentError(f"seed must be nonnegative, got {seed}")

    parts = []
    for block_index, start in enumerate(range(0, n, BLOCK)):
        size = min(BLOCK, n - start)
        parts.append(_draw_block(state, block_generator(seed, block_index), size))
    meta = DatasetMeta(
        source=f"simulated:{state.describe()}",
        efficiency=state.efficiency if state.kind is StateKind.SINGLE_EXCITATION else None,
        description=f"seed={seed}",
    )
    return QuadratureDataset(samples=np.concatenate(parts), angle=0.0, meta=meta)
