"""Tests for settings hashing and provenance stamps."""

import numpy as np

from aqqp import __version__
from aqqp.core.hashing import settings_hash, stamp_lines


def test_settings_hash_ignores_key_order():
    assert settings_hash({"a": 1.0, "b": 2}) == settings_hash({"b": 2, "a": 1.0})


def test_settings_hash_treats_numpy_scalars_like_python_numbers():
    plain = {"width": 1.1, "points": 30, "grid": [0.0, 0.5]}
    numpy = {"width": np.float64(1.1), "points": np.int64(30), "grid": np.array([0.0, 0.5])}
    assert settings_hash(plain) == settings_hash(numpy)


def test_settings_hash_distinguishes_nearby_floats():
    assert settings_hash({"w": 1.1}) != settings_hash({"w": 1.1000000000000003})


def test_settings_hash_is_stable_hex_digest():
    digest = settings_hash({"kernel": "quartic", "rel_tol": 1e-9})
    assert len(digest) == 64
    assert digest == settings_hash({"rel_tol": 1e-9, "kernel": "quartic"})


def test_stamp_lines_carry_version_hash_and_sorted_extras():
    lines = stamp_lines("abc123", {"seed": 3, "preset": "squeezed"})
    assert lines == [
        f"# aqqp {__version__}",
        "# settings_hash=abc123",
        "# preset=squeezed",
        "# seed=3",
    ]
