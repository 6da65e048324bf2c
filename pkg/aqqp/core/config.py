"""Configuration loading for analysis runs."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np
import yaml

from aqqp.core.errors import InvalidArgumentError
from aqqp.core.hashing import settings_hash

_ENV_TO_FIELD = {
    "AQQP_CACHE_DIR": "cache_dir",
    "AQQP_WORKERS": "workers",
    "AQQP_EFFICIENCY_THRESHOLD": "efficiency_threshold",
}

# Settings that change how a result is computed but never what it is.
_NON_NUMERIC_FIELDS = {"cache_dir", "workers"}


def _as_path(value: str | Path) -> Path:
    return Path(value).expanduser()


@dataclass(frozen=True)
class AnalysisConfig:
    """Resolved numeric settings for filters, tables, grids and scans.

    Attributes:
        kernel: Registered base-kernel name of the autocorrelation filter.
        rel_tol: Relative tolerance of the filter quadrature.
        memo_spacing: Node spacing of the memoized filter grid.
        x_max: Half-range of the pattern-table displacement grid.
        table_spacing: Node spacing of the pattern-table grid.
        phi_min: Lower end of the j_phi grid.
        phi_max: Upper end of the j_phi grid.
        phi_step: Spacing of the j_phi grid.
        scan_min: Smallest width of the default width scan.
        scan_max: Largest width of the default width scan.
        scan_points: Number of log-spaced widths in the default scan.
        width_min: Smallest accepted filter width.
        width_max: Largest accepted filter width.
        efficiency_threshold: Minimum detection efficiency for normalization.
        workers: Worker threads for table builds and estimation.
        cache_dir: Directory of the pattern-table cache.
    """

    kernel: str = "quartic"
    rel_tol: float = 1e-9
    memo_spacing: float = 0.001
    x_max: float = 15.0
    table_spacing: float = 0.005
    phi_min: float = -6.0
    phi_max: float = 6.0
    phi_step: float = 0.05
    scan_min: float = 0.4
    scan_max: float = 3.0
    scan_points: int = 30
    width_min: float = 0.1
    width_max: float = 3.0
    efficiency_threshold: float = 0.77
    workers: int = 1
    cache_dir: Path = Path("~/.cache/aqqp/patterns").expanduser()

    @classmethod
    def load(cls, config_path: Path | None = None) -> AnalysisConfig:
        """Load config with precedence: defaults < YAML < environment."""
        values: dict[str, object] = {}
        values.update(cls._load_yaml_values(config_path))

        for env_key, field_name in _ENV_TO_FIELD.items():
            env_value = os.environ.get(env_key)
            if env_value is None or env_value == "":
                continue
            values[field_name] = env_value

        return cls().with_overrides(**values)

    @classmethod
    def _load_yaml_values(cls, config_path: Path | None) -> dict[str, object]:
        candidates = (
            [config_path.expanduser()]
            if config_path is not None
            else [Path("aqqp.yaml"), _as_path("~/.config/aqqp/config.yaml")]
        )
        allowed_keys = {item.name for item in fields(cls)}

        for candidate in candidates:
            if not candidate.exists():
                continue

            with candidate.open("r", encoding="utf-8") as config_file:
                loaded = yaml.safe_load(config_file) or {}
            if not isinstance(loaded, dict):
                return {}
            return {key: value for key, value in loaded.items() if key in allowed_keys}

        return {}

    def with_overrides(self, **overrides: object) -> AnalysisConfig:
        """Return a copy with the given non-None fields replaced and coerced."""
        types = {item.name: item.type for item in fields(self)}
        coerced: dict[str, object] = {}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in types:
                raise InvalidArgumentError(f"unknown setting: {name}")
            coerced[name] = _coerce(name, types[name], value)
        updated = replace(self, **coerced)
        updated.validate()
        return updated

    def validate(self) -> None:
        """Check documented parameter domains."""
        if not 0 < self.rel_tol < 1:
            raise InvalidArgumentError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.phi_step <= 0 or self.phi_max <= self.phi_min:
            raise InvalidArgumentError("phi grid needs phi_max > phi_min and phi_step > 0")
        if self.workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.efficiency_threshold < 1:
            raise InvalidArgumentError("efficiency_threshold must lie in [0, 1)")
        if self.scan_points < 1 or not (
            self.width_min <= self.scan_min <= self.scan_max <= self.width_max
        ):
            raise InvalidArgumentError("width scan must lie inside [width_min, width_max]")

    def check_width(self, width: float) -> float:
        """Return ``width`` if it lies inside the accepted range."""
        if not self.width_min <= width <= self.width_max:
            raise InvalidArgumentError(
                f"filter width {width} outside [{self.width_min}, {self.width_max}]"
            )
        return float(width)

    def phi_grid(self) -> np.ndarray:
        """Return the j_phi grid, built by index so endpoints are reproducible."""
        count = int(round((self.phi_max - self.phi_min) / self.phi_step)) + 1
        return self.phi_min + self.phi_step * np.arange(count, dtype=np.float64)

    def scan_widths(self) -> np.ndarray:
        """Return the default log-spaced width scan."""
        if self.scan_points == 1:
            return np.array([self.scan_min])
        return np.geomspace(self.scan_min, self.scan_max, self.scan_points)

    def numeric_settings(self) -> dict[str, object]:
        """Return every setting that influences numeric results."""
        return {
            item.name: getattr(self, item.name)
            for item in fields(self)
            if item.name not in _NON_NUMERIC_FIELDS
        }

    @property
    def settings_hash(self) -> str:
        """Digest of the numeric settings, stable across platforms."""
        return settings_hash(self.numeric_settings())


def _coerce(name: str, annotation: object, value: object) -> object:
    kind = str(annotation)
    try:
        if kind == "Path":
            return _as_path(value)  # type: ignore[arg-type]
        if kind == "int":
            return int(value)  # type: ignore[arg-type]
        if kind == "float":
            return float(value)  # type: ignore[arg-type]
        return str(value)
    except (TypeError, ValueError) as error:
        raise InvalidArgumentError(f"invalid value for {name}: {value!r}") from error
