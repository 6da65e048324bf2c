"""Tests for the pattern-table cache."""

import numpy as np
import pytest

from aqqp.core.errors import DataIOError
from aqqp.filters.autocorrelation import make_filter
from aqqp.pattern.cache import PatternCache
from aqqp.pattern.table import from_values, symmetric_grid

X_MAX = 0.5
SPACING = 0.01


@pytest.fixture(scope="module")
def unit_filter():
    return make_filter(1.0)


@pytest.fixture
def synthetic_table(unit_filter):
    grid = symmetric_grid(X_MAX, SPACING)
    return from_values(unit_filter, grid, np.cos(grid) / 3.0, SPACING, x_max=X_MAX)


def test_store_then_load_is_exact(tmp_path, synthetic_table, unit_filter):
    cache = PatternCache(tmp_path / "patterns")
    path = cache.store(synthetic_table)

    assert path.exists()
    assert path.read_text(encoding="utf-8").startswith("# aqqp-pattern-table")
    loaded = cache.load(unit_filter, X_MAX, SPACING)
    assert loaded is not None
    np.testing.assert_array_equal(loaded.values, synthetic_table.values)
    np.testing.assert_array_equal(loaded.x_grid, synthetic_table.x_grid)


def test_load_missing_returns_none(tmp_path, unit_filter):
    assert PatternCache(tmp_path).load(unit_filter, X_MAX, SPACING) is None


def test_paths_differ_by_parameters(tmp_path, unit_filter):
    cache = PatternCache(tmp_path)
    assert cache.path_for(unit_filter, 15.0, 0.005) != cache.path_for(unit_filter, 15.0, 0.01)
    assert cache.path_for(unit_filter, 15.0, 0.005) != cache.path_for(
        make_filter(1.5), 15.0, 0.005
    )


def test_foreign_header_is_ignored(tmp_path, synthetic_table, unit_filter):
    cache = PatternCache(tmp_path)
    path = cache.store(synthetic_table)
    lines = path.read_text(encoding="utf-8").splitlines()
    lines[0] = "# aqqp-pattern-table width=2.0"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    assert cache.load(unit_filter, X_MAX, SPACING) is None


def test_corrupt_file_is_ignored(tmp_path, synthetic_table, unit_filter):
    cache = PatternCache(tmp_path)
    path = cache.store(synthetic_table)
    with path.open("a", encoding="utf-8") as handle:
        handle.write("not,a,number\n")

    assert cache.load(unit_filter, X_MAX, SPACING) is None


def test_get_or_build_uses_cache(tmp_path, synthetic_table, unit_filter, mocker):
    cache = PatternCache(tmp_path)
    cache.store(synthetic_table)
    build = mocker.patch("aqqp.pattern.cache.build_pattern_table")

    table = cache.get_or_build(unit_filter, X_MAX, SPACING)

    build.assert_not_called()
    np.testing.assert_array_equal(table.values, synthetic_table.values)


def test_get_or_build_stores_new_table(tmp_path, synthetic_table, unit_filter, mocker):
    cache = PatternCache(tmp_path, workers=2)
    build = mocker.patch(
        "aqqp.pattern.cache.build_pattern_table", return_value=synthetic_table
    )

    cache.get_or_build(unit_filter, X_MAX, SPACING)

    build.assert_called_once_with(unit_filter, x_max=X_MAX, spacing=SPACING, workers=2)
    assert cache.path_for(unit_filter, X_MAX, SPACING).exists()


def test_wipe(tmp_path, synthetic_table):
    cache = PatternCache(tmp_path)
    cache.store(synthetic_table)
    assert cache.wipe() == 1
    assert cache.wipe() == 0
    assert PatternCache(tmp_path / "absent").wipe() == 0


def test_tables_lists_only_pattern_files(tmp_path, synthetic_table):
    cache = PatternCache(tmp_path)
    stored = cache.store(synthetic_table)
    (tmp_path / "notes.txt").write_text("unrelated", encoding="utf-8")

    assert cache.tables() == [stored]
    assert PatternCache(tmp_path / "absent").tables() == []


def test_wipe_reports_undeletable_table(tmp_path, synthetic_table, mocker):
    cache = PatternCache(tmp_path)
    cache.store(synthetic_table)
    mocker.patch("pathlib.Path.unlink", side_effect=PermissionError("read-only"))

    with pytest.raises(DataIOError, match="cannot delete pattern table"):
        cache.wipe()
