"""Persistent CSV cache of pattern tables."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from aqqp.core.errors import DataIOError
from aqqp.core.hashing import settings_hash
from aqqp.core.paths import PathResolver
from aqqp.pattern.table import PatternTable, build_pattern_table, from_values, symmetric_grid

if TYPE_CHECKING:
    from pathlib import Path

    from aqqp.filters.autocorrelation import FilterSpec

LOGGER = logging.getLogger("aqqp.pattern.cache")

_HEADER_PREFIX = "# aqqp-pattern-table"


def table_parameters(f: FilterSpec, x_max: float, spacing: float) -> dict[str, object]:
    """Return the parameters a cached table is keyed by."""
    params = dict(f.cache_key())
    params.update({"x_max": float(x_max), "spacing": float(spacing)})
    return params


class PatternCache:
    """Directory of pattern tables keyed by (kernel, w, x_max, spacing, tolerance).

    Attributes:
        cache_dir: Directory where the table files are stored.
    """

    def __init__(self, cache_dir: Path, workers: int = 1) -> None:
        """Initialise (but do not create) the cache directory.

        Args:
            cache_dir: Directory for table files
            workers: Worker threads used when a table must be built
        """
        self.cache_dir = cache_dir
        self.workers = workers

    def path_for(self, f: FilterSpec, x_max: float, spacing: float) -> Path:
        """Return the cache file path of a table."""
        key = settings_hash(table_parameters(f, x_max, spacing))
        return PathResolver.get_table_path(key, self.cache_dir)

    # ------------------------------------------------------------------
    # Storing
    # ------------------------------------------------------------------

    def store(self, table: PatternTable) -> Path:
        """Write ``table`` to the cache and return its path."""
        params = table_parameters(table.filter, table.x_max, table.spacing)
        path = self.path_for(table.filter, table.x_max, table.spacing)
        header = " ".join(f"{key}={value!r}" for key, value in sorted(params.items()))
        lines = [f"{_HEADER_PREFIX} {header}", "x,value"]
        lines.extend(
            f"{x!r},{value!r}"
            for x, value in zip(table.x_grid.tolist(), table.values.tolist(), strict=True)
        )
        try:
            PathResolver.ensure_parent(path)
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as error:
            raise DataIOError(path, f"cannot write pattern table: {error}") from error
        LOGGER.info("Cached pattern table w=%.4g at %s", table.width, path)
        return path

    # ------------------------------------------------------------------
    # Loading
    # ------------------------------------------------------------------

    def load(self, f: FilterSpec, x_max: float, spacing: float) -> PatternTable | None:
        """Load a cached table for ``f``.

        Returns:
            The table, or None if missing, unreadable or built with other parameters.
        """
        path = self.path_for(f, x_max, spacing)
        if not path.exists():
            return None

        params = table_parameters(f, x_max, spacing)
        expected = " ".join(f"{key}={value!r}" for key, value in sorted(params.items()))
        try:
            with path.open("r", encoding="utf-8") as handle:
                header = handle.readline().rstrip("\n")
                if header != f"{_HEADER_PREFIX} {expected}":
                    LOGGER.warning("Ignoring pattern table with foreign header: %s", path)
                    return None
                data = np.loadtxt(handle, delimiter=",", skiprows=1, dtype=np.float64, ndmin=2)
        except (OSError, ValueError):
            LOGGER.exception("Failed to load pattern table %s", path)
            return None

        x_grid = data[:, 0]
        if not np.array_equal(x_grid, symmetric_grid(x_max, spacing)):
            LOGGER.warning("Ignoring pattern table with unexpected grid: %s", path)
            return None
        LOGGER.debug("Loaded pattern table w=%.4g from %s", f.width, path)
        return from_values(f, x_grid, data[:, 1], spacing, x_max)

    def get_or_build(self, f: FilterSpec, x_max: float, spacing: float) -> PatternTable:
        """Return the cached table for ``f``, building and storing it if needed."""
        table = self.load(f, x_max, spacing)
        if table is not None:
            return table
        table = build_pattern_table(f, x_max=x_max, spacing=spacing, workers=self.workers)
        self.store(table)
        return table

    # ------------------------------------------------------------------
    # Maintenance
    # ------------------------------------------------------------------

    def tables(self) -> list[Path]:
        """Return the cached table files, sorted by name."""
        if not self.cache_dir.exists():
            return []
        return sorted(self.cache_dir.glob("pattern_*.csv"))

    def wipe(self) -> int:
        """Delete all cached tables and return how many were removed."""
        removed = 0
        for path in self.tables():
            try:
                path.unlink()
            except OSError as error:
                raise DataIOError(path, f"cannot delete pattern table: {error}") from error
            removed += 1
        LOGGER.info("Removed %d cached pattern tables from %s", removed, self.cache_dir)
        return removed
