"""Tests for pattern-function tables."""

import numpy as np
import pytest

from aqqp.core.errors import InvalidArgumentError, NumericalConvergenceError, RangeError
from aqqp.filters.autocorrelation import filter_fourier_transform, make_filter
from aqqp.pattern.table import (
    build_pattern_table,
    direct_pattern_value,
    eval_pattern,
    from_values,
    symmetric_grid,
)


@pytest.fixture(scope="module")
def unit_filter():
    return make_filter(1.0)


@pytest.fixture(scope="module")
def table(unit_filter):
    return build_pattern_table(unit_filter, x_max=12.0, spacing=0.01)


class TestBuild:
    """Tests for building tables."""

    def test_grid_is_symmetric(self, table):
        assert table.x_grid.size == 2401
        np.testing.assert_array_equal(table.x_grid, -table.x_grid[::-1])
        np.testing.assert_array_equal(table.values, table.values[::-1])
        assert table.x_max == 12.0

    def test_values_are_read_only(self, table):
        with pytest.raises(ValueError):
            table.values[0] = 1.0

    @pytest.mark.parametrize("x", [0.0, 0.7, 3.3, 9.0])
    def test_matches_adaptive_quadrature(self, table, unit_filter, x):
        assert table(x) == pytest.approx(
            direct_pattern_value(unit_filter, x), abs=1e-6 * table.max_abs
        )

    def test_vacuum_average_equals_filter_transform(self, table, unit_filter):
        # averaging f(j) over the vacuum density integrates Omega_w over k
        density = np.exp(-0.5 * table.x_grid**2) / np.sqrt(2.0 * np.pi)
        average = np.trapezoid(table.values * density, table.x_grid)
        expected = filter_fourier_transform(unit_filter, np.zeros(1))[0]
        assert average == pytest.approx(expected, rel=1e-6)

    def test_deterministic(self, table, unit_filter):
        rebuilt = build_pattern_table(unit_filter, x_max=12.0, spacing=0.01, workers=3)
        np.testing.assert_array_equal(rebuilt.values, table.values)

    @pytest.mark.parametrize(("x_max", "spacing"), [(10.0, 0.005), (15.0, 0.02), (15.0, 0.0)])
    def test_rejects_bad_grid(self, unit_filter, x_max, spacing):
        with pytest.raises(InvalidArgumentError):
            build_pattern_table(unit_filter, x_max=x_max, spacing=spacing)


class TestEvaluation:
    """Tests for interpolating tables."""

    def test_eval_pattern_uses_displacement(self, table):
        assert eval_pattern(table, 1.25, 0.5) == table(0.75)
        np.testing.assert_array_equal(
            eval_pattern(table, np.array([0.0, 1.0]), 1.0), table(np.array([-1.0, 0.0]))
        )

    def test_range_error_beyond_grid(self, table):
        with pytest.raises(RangeError, match="x_max"):
            eval_pattern(table, 8.0, -6.0)

    def test_central_value(self, table):
        assert table.central_value == table.values[1200]


class TestFromValues:
    """Tests for assembling tables from stored values."""

    def test_mismatched_shapes(self, unit_filter):
        with pytest.raises(InvalidArgumentError):
            from_values(unit_filter, np.zeros(7), np.zeros(6), 0.01)

    def test_non_finite_values(self, unit_filter):
        grid = symmetric_grid(0.05, 0.01)
        values = np.ones_like(grid)
        values[3] = np.nan
        with pytest.raises(NumericalConvergenceError):
            from_values(unit_filter, grid, values, 0.01)

    def test_explicit_x_max(self, unit_filter):
        grid = symmetric_grid(0.05, 0.01)
        table = from_values(unit_filter, grid, np.ones_like(grid), 0.01, x_max=0.05)
        assert table.x_max == 0.05


@pytest.fixture(scope="module")
def tables():
    """Tables keyed by width, built on demand and shared across the module."""
    built = {}

    def table_for(width):
        if width not in built:
            built[width] = build_pattern_table(make_filter(width), x_max=12.0, spacing=0.005)
        return built[width]

    return table_for


class TestAcrossWidths:
    """Interpolation fidelity and shape of tables over the width range."""

    @pytest.mark.parametrize("width", [0.5, 1.1, 2.0, 3.0])
    def test_off_grid_values_match_adaptive_quadrature(self, tables, width):
        table = tables(width)
        x = np.random.default_rng(int(width * 10)).uniform(-9.0, 9.0, 50)
        direct = np.array([direct_pattern_value(table.filter, value) for value in x])
        np.testing.assert_allclose(table(x), direct, rtol=0.0, atol=1e-6 * table.max_abs)

    def test_documented_off_grid_point(self, tables):
        table = tables(1.1)
        assert table(0.1234) == pytest.approx(
            direct_pattern_value(table.filter, 0.1234), abs=1e-6 * table.max_abs
        )

    def test_oscillation_amplitude_grows_with_width(self, tables):
        amplitudes = [tables(width).max_abs for width in (0.5, 1.0, 2.0)]
        assert amplitudes == sorted(amplitudes)

    @pytest.mark.parametrize("width", [0.5, 1.0, 1.1, 2.0])
    def test_tails_are_small(self, tables, width):
        table = tables(width)
        assert abs(table.values[-1]) < 1e-3 * table.max_abs
        assert abs(table.values[0]) < 1e-3 * table.max_abs


def test_small_width_approaches_filter_transform():
    def deviation(width):
        table = build_pattern_table(make_filter(width), x_max=12.0, spacing=0.01)
        transform = filter_fourier_transform(table.filter, table.x_grid)
        return np.max(np.abs(table.values - transform)) / transform.max()

    assert deviation(0.1) < deviation(0.2)
