"""Hashing helpers for reproducibility stamps."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from aqqp import __version__


def _canonical(value: object) -> object:
    if isinstance(value, dict):
        return {str(key): _canonical(item) for key, item in sorted(value.items())}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_canonical(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # repr round-trips exactly and is platform independent
        return repr(float(value))
    if isinstance(value, Path):
        return str(value)
    return value


def settings_hash(settings: dict) -> str:
    """Return a lowercase SHA-256 hex digest of a settings dictionary.

    Keys are sorted and floats are rendered with ``repr``, so identical settings
    hash identically on every platform.
    """
    payload = json.dumps(_canonical(settings), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def stamp_lines(settings_hash: str | None, extra: dict[str, object] | None = None) -> list[str]:
    """Comment lines identifying the tool version and settings of a CSV output."""
    lines = [f"# aqqp {__version__}"]
    if settings_hash is not None:
        lines.append(f"# settings_hash={settings_hash}")
    for key, value in sorted((extra or {}).items()):
        lines.append(f"# {key}={value}")
    return lines
