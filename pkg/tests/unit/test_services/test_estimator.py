"""Tests for the direct-sampling estimator and the significance scan."""

import numpy as np
import pytest

from aqqp.core.config import AnalysisConfig
from aqqp.core.errors import InsufficientDataError, InvalidArgumentError, RangeError
from aqqp.core.models import AqqpEstimate, QuadratureDataset
from aqqp.filters.autocorrelation import make_filter
from aqqp.services.estimator import (
    AqqpEstimator,
    empirical_density,
    estimate_aqqp,
    reaching_grid,
    scan_width,
    significance,
)
from aqqp.states.models import StateModel, with_detection_efficiency
from aqqp.states.oracle import analytic_aqqp
from aqqp.states.sampling import sample_quadratures

GRID = np.linspace(-4.0, 4.0, 41)
SQUEEZED = StateModel.gaussian(0.681)


@pytest.fixture(scope="module")
def vacuum_data():
    return sample_quadratures(StateModel.gaussian(1.0), 20000, seed=21)


class TestEstimateAqqp:
    """Tests for pointwise estimation."""

    def test_agrees_with_analytic_vacuum(self, vacuum_data, vacuum_table):
        est = estimate_aqqp(vacuum_data, vacuum_table, GRID)
        exact = analytic_aqqp(StateModel.gaussian(1.0), vacuum_table.filter, GRID)

        assert est.n_samples == 20000
        assert est.width == 1.0
        assert np.max(np.abs(est.p - exact) / est.se) < 5.0

    def test_vacuum_is_not_significantly_negative(self, vacuum_data, vacuum_table):
        sigma, _ = significance(estimate_aqqp(vacuum_data, vacuum_table, GRID))
        assert sigma > -4.0

    def test_independent_of_order_and_workers(self, vacuum_data, vacuum_table):
        reference = estimate_aqqp(vacuum_data, vacuum_table, GRID)
        shuffled = QuadratureDataset(
            samples=np.random.default_rng(0).permutation(vacuum_data.samples)
        )
        other = estimate_aqqp(shuffled, vacuum_table, GRID, workers=4)
        np.testing.assert_array_equal(other.p, reference.p)
        np.testing.assert_array_equal(other.se, reference.se)

    def test_single_sample(self, vacuum_table):
        with pytest.raises(InsufficientDataError, match="at least 2"):
            estimate_aqqp(QuadratureDataset(samples=[0.3]), vacuum_table, GRID)

    def test_zero_spread(self, vacuum_table):
        with pytest.raises(InsufficientDataError, match="zero spread"):
            estimate_aqqp(QuadratureDataset(samples=[0.3, 0.3, 0.3]), vacuum_table, GRID)

    def test_empty_grid(self, vacuum_data, vacuum_table):
        with pytest.raises(InvalidArgumentError, match="empty"):
            estimate_aqqp(vacuum_data, vacuum_table, [])

    def test_unordered_grid(self, vacuum_data, vacuum_table):
        with pytest.raises(InvalidArgumentError, match="strictly increasing"):
            estimate_aqqp(vacuum_data, vacuum_table, [1.0, 0.0, 2.0])

    def test_displacement_beyond_table(self, vacuum_table):
        data = QuadratureDataset(samples=[0.0, 10.0])
        with pytest.raises(RangeError, match="x_max"):
            estimate_aqqp(data, vacuum_table, [-6.0, 0.0])


class TestSignificance:
    """Tests for Sigma and its location."""

    def test_minimum_ratio(self):
        est = AqqpEstimate(
            phi_grid=[-1.0, 0.0, 1.0], p=[0.2, -0.3, 0.1], se=[0.1, 0.1, 0.1], width=1.0,
            n_samples=10,
        )
        sigma, at_phi = significance(est)
        assert sigma == pytest.approx(-3.0)
        assert at_phi == 0.0

    def test_ties_go_to_smallest_phi(self):
        est = AqqpEstimate(
            phi_grid=[-1.0, 0.0, 1.0], p=[-1.0, 0.5, -1.0], se=[1.0, 1.0, 1.0], width=1.0,
            n_samples=10,
        )
        assert significance(est) == (-1.0, -1.0)


class TestScanWidth:
    """Tests for the width scan."""

    def test_scan_requests_each_width(self, vacuum_data, vacuum_table, mocker):
        table_for = mocker.Mock(return_value=vacuum_table)
        scan = scan_width(vacuum_data, [0.5, 1.0, 2.0], GRID, table_for)

        assert [call.args[0] for call in table_for.call_args_list] == [0.5, 1.0, 2.0]
        np.testing.assert_array_equal(scan.widths, [0.5, 1.0, 2.0])
        assert scan.sigma[0] == scan.sigma[2]

    @pytest.mark.parametrize("widths", [[], [1.0, 1.0], [2.0, 1.0], [0.05, 1.0], [1.0, 3.5]])
    def test_invalid_widths(self, vacuum_data, vacuum_table, widths):
        with pytest.raises(InvalidArgumentError):
            scan_width(vacuum_data, widths, GRID, lambda _: vacuum_table)


def test_empirical_density_is_normalized(vacuum_data):
    centres, density = empirical_density(vacuum_data, bins=40, value_range=(-5.0, 5.0))
    assert centres.size == 40
    assert np.sum(density) * 0.25 == pytest.approx(1.0)


class TestAqqpEstimator:
    """Tests for the configured estimator."""

    def test_table_is_cached(self, fast_config):
        estimator = AqqpEstimator(fast_config)
        estimator.table(1.0)

        assert len(list(fast_config.cache_dir.glob("pattern_*.csv"))) == 1

    def test_rejects_width_outside_range(self, fast_config):
        with pytest.raises(InvalidArgumentError, match="outside"):
            AqqpEstimator(fast_config).table(3.5)

    def test_squeezed_state_is_significantly_negative(self, fast_config):
        data = sample_quadratures(StateModel.gaussian(0.681), 4841, seed=0)
        sigma, at_phi = significance(AqqpEstimator(fast_config).estimate(data, 1.1))
        assert -16.0 <= sigma <= -6.0
        assert abs(at_phi) < 4.0

    def test_scan_uses_configured_widths(self, fast_config, mocker):
        estimator = AqqpEstimator(fast_config.with_overrides(scan_points=2, scan_min=1.0))
        table = mocker.patch.object(estimator, "table")
        table.return_value = estimator.cache.get_or_build(
            make_filter(1.0), fast_config.x_max, fast_config.table_spacing
        )
        data = sample_quadratures(StateModel.gaussian(1.0), 500, seed=1)

        scan = estimator.scan(data)

        np.testing.assert_allclose(scan.widths, [1.0, 3.0])


@pytest.mark.slow
def test_standard_errors_give_nominal_coverage(vacuum_table):
    exact = analytic_aqqp(StateModel.gaussian(1.0), vacuum_table.filter, np.zeros(1))[0]
    covered = 0
    for seed in range(200):
        data = sample_quadratures(StateModel.gaussian(1.0), 2000, seed=seed)
        est = estimate_aqqp(data, vacuum_table, [0.0])
        covered += abs(est.p[0] - exact) <= 1.96 * est.se[0]
    assert 0.9 <= covered / 200 <= 0.99


class TestReachingGrid:
    """Tests for the per-width extension of the scan grid."""

    BASE = -6.0 + 0.1 * np.arange(121)

    def test_extends_for_small_width(self):
        grid = reaching_grid(self.BASE, 0.5, limit=20.0)
        assert grid[0] == pytest.approx(-8.0)
        assert grid[-1] == pytest.approx(8.0)
        np.testing.assert_allclose(np.diff(grid), 0.1)
        np.testing.assert_array_equal(grid[20:141], self.BASE)

    def test_respects_limit(self):
        grid = reaching_grid(self.BASE, 0.5, limit=7.0)
        assert grid[0] == pytest.approx(-7.0)
        assert grid[-1] == pytest.approx(7.0)

    @pytest.mark.parametrize("width", [1.0, 2.0, 3.0])
    def test_wide_enough_grid_is_unchanged(self, width):
        np.testing.assert_array_equal(reaching_grid(self.BASE, width, limit=20.0), self.BASE)

    def test_single_point(self):
        np.testing.assert_array_equal(reaching_grid([0.0], 0.2, limit=20.0), [0.0])


class TestSqueezedShape:
    """Negativity pattern of 1.67 dB squeezing with 4841 samples."""

    @pytest.fixture
    def data(self):
        return sample_quadratures(SQUEEZED, 4841, seed=0)

    def test_central_peak_and_two_negative_lobes(self, fast_config, data):
        est = AqqpEstimator(fast_config).estimate(data, 1.1)
        negative = est.p < -3.0 * est.se
        lobes = np.count_nonzero(negative[1:] & ~negative[:-1]) + int(negative[0])

        assert lobes >= 2
        assert est.ratio[np.argmin(np.abs(est.phi_grid))] > 3.0
        assert np.any(negative[est.phi_grid < 0])
        assert np.any(negative[est.phi_grid > 0])

    def test_smaller_width_is_more_significant(self, fast_config, data):
        scan = AqqpEstimator(fast_config).scan(data, [0.5, 2.0])
        assert scan.sigma[0] < scan.sigma[1]
        assert abs(scan.argmin_phi[0]) > 6.0

    @pytest.mark.slow
    def test_large_sample_reaches_twenty_deviations(self, fast_config):
        data = sample_quadratures(SQUEEZED, 100_000, seed=0)
        _, sigma, _ = AqqpEstimator(fast_config).scan(data, [0.5, 0.8, 1.1]).best()
        assert sigma <= -20.0


class TestEstimatorAlgebra:
    """Linearity in the data and independence of the worker count."""

    def test_concatenation_is_sample_weighted_mean(self, vacuum_table):
        first = sample_quadratures(SQUEEZED, 3000, seed=4)
        second = sample_quadratures(SQUEEZED, 1000, seed=5)

        joined = estimate_aqqp(first.concatenate(second), vacuum_table, GRID)
        parts = [estimate_aqqp(d, vacuum_table, GRID) for d in (first, second)]

        expected = (3000 * parts[0].p + 1000 * parts[1].p) / 4000
        np.testing.assert_allclose(joined.p, expected, rtol=1e-12, atol=1e-14)

    def test_eight_workers_give_identical_estimate(self, vacuum_table):
        data = sample_quadratures(SQUEEZED, 4841, seed=0)
        single = estimate_aqqp(data, vacuum_table, GRID, workers=1)
        pooled = estimate_aqqp(data, vacuum_table, GRID, workers=8)
        assert single.p.tobytes() == pooled.p.tobytes()
        assert single.se.tobytes() == pooled.se.tobytes()


class TestDetectionNoise:
    """Added Gaussian detection noise attenuates the negativity."""

    EFFICIENCY = 0.6

    def _noisy(self, data, seed):
        noise = np.random.default_rng(10_000 + seed).standard_normal(data.n_samples)
        mixed = np.sqrt(self.EFFICIENCY) * data.samples + np.sqrt(1 - self.EFFICIENCY) * noise
        return QuadratureDataset(samples=mixed)

    def test_noise_reduces_significance(self, fast_config):
        estimator = AqqpEstimator(fast_config)
        clean, noisy = [], []
        for seed in range(20):
            data = sample_quadratures(SQUEEZED, 4841, seed=seed)
            clean.append(significance(estimator.estimate(data, 1.1))[0])
            noisy.append(significance(estimator.estimate(self._noisy(data, seed), 1.1))[0])
        clean, noisy = np.abs(clean), np.abs(noisy)

        assert np.count_nonzero(noisy < clean) >= 18
        assert noisy.mean() < clean.mean()

    def test_noisy_estimate_matches_lossy_state(self, fast_config):
        estimator = AqqpEstimator(fast_config)
        data = self._noisy(sample_quadratures(SQUEEZED, 20000, seed=3), 3)
        est = estimator.estimate(data, 1.1)
        lossy = with_detection_efficiency(SQUEEZED, self.EFFICIENCY)
        exact = analytic_aqqp(lossy, estimator.table(1.1).filter, est.phi_grid)

        assert lossy.variance == pytest.approx(0.6 * 0.681 + 0.4)
        assert np.max(np.abs(est.p - exact) / est.se) < 5.0


@pytest.fixture(scope="module")
def shared_estimator(tmp_path_factory):
    config = AnalysisConfig().with_overrides(
        x_max=12.0,
        table_spacing=0.01,
        phi_step=0.1,
        cache_dir=tmp_path_factory.mktemp("patterns"),
    )
    return AqqpEstimator(config)


@pytest.mark.slow
@pytest.mark.parametrize("variance", [1.0, 1.5])
def test_classical_states_are_rarely_flagged(shared_estimator, variance):
    state = StateModel.gaussian(variance)
    table = shared_estimator.table(1.1)
    grid = shared_estimator.config.phi_grid()
    assert analytic_aqqp(state, table.filter, grid).min() >= -1e-9

    flagged = 0
    for seed in range(100):
        data = sample_quadratures(state, 4841, seed=seed)
        flagged += significance(estimate_aqqp(data, table, grid))[0] < -4.0
    assert flagged < 5


@pytest.mark.slow
@pytest.mark.parametrize("width", [0.7, 1.1, 2.0])
@pytest.mark.parametrize(
    "state",
    [
        StateModel.gaussian(0.681),
        StateModel.gaussian(1.0),
        StateModel.gaussian(1.5),
        StateModel.single_excitation(),
    ],
    ids=["squeezed", "vacuum", "thermal", "single_excitation"],
)
def test_large_sample_agrees_with_analytic(shared_estimator, state, width):
    grid = np.linspace(-5.0, 5.0, 101)
    data = sample_quadratures(state, 100_000, seed=7)
    est = shared_estimator.estimate(data, width, grid)
    exact = analytic_aqqp(state, shared_estimator.table(width).filter, grid)

    inside = np.abs(est.p - exact) <= 4.0 * est.se
    assert np.mean(inside) >= 0.99
