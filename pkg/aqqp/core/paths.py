"""Centralized path resolution for AQQP outputs and caches."""

from pathlib import Path


class PathResolver:
    """Static methods for consistent path generation."""

    @staticmethod
    def get_table_path(table_key: str, cache_dir: Path) -> Path:
        """Get cache file for a pattern table.

        Args:
            table_key: Hex digest identifying the table parameters
            cache_dir: Pattern-table cache directory

        Returns:
            Path to the cached table CSV
        """
        return cache_dir / f"pattern_{table_key[:16]}.csv"

    @staticmethod
    def get_sidecar_path(data_path: Path) -> Path:
        """Get the JSON metadata sidecar that accompanies a CSV file.

        Args:
            data_path: Path to the CSV data file

        Returns:
            Path with the ``.json`` suffix replacing the CSV suffix
        """
        return data_path.with_suffix(".json")

    @staticmethod
    def ensure_parent(path: Path) -> Path:
        """Create the parent directory of ``path`` if it doesn't exist."""
        path.parent.mkdir(parents=True, exist_ok=True)
        return path
