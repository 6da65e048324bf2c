"""Tests for the analysis pipeline."""

import numpy as np
import pytest

from aqqp.calibration.model import efficiency
from aqqp.calibration.normalize import write_dataset
from aqqp.calibration.records_io import write_records
from aqqp.core.config import AnalysisConfig
from aqqp.core.errors import EfficiencyRejectedError, InvalidArgumentError
from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
from aqqp.pipelines.presets import get_preset
from aqqp.states.models import StateModel


@pytest.fixture
def pipeline(tmp_path):
    config = AnalysisConfig().with_overrides(
        x_max=12.0, table_spacing=0.01, phi_step=0.1, cache_dir=tmp_path / "patterns"
    )
    return AnalysisPipeline(config)


@pytest.fixture
def calibration(tmp_path, pipeline):
    records = pipeline.simulate_records(get_preset("experiment"), seed=3)
    model = pipeline.calibrate(records)
    return model, model.to_json(tmp_path / "calibration.json")


class TestSimulation:
    """Tests for simulated data sources."""

    def test_probe_reaches_reference_efficiency(self):
        assert AnalysisPipeline.probe().efficiency(290_000) == pytest.approx(0.83)

    def test_overrides(self, pipeline):
        records = pipeline.simulate_records(
            get_preset("squeezed"), seed=1, records_per_group=5, atom_numbers=(250_000, 290_000)
        )
        assert len(records) == 10
        assert {r.n_atoms for r in records} == {250_000, 290_000}

    def test_variance_override_at_low_atom_numbers(self, pipeline):
        records = pipeline.simulate_records(
            get_preset("squeezed"),
            seed=1,
            records_per_group=5,
            atom_numbers=(1000, 2000),
            variance=1.0,
        )
        assert {r.n_atoms for r in records} == {1000, 2000}

    def test_squeezing_unreachable_at_low_efficiency(self, pipeline):
        with pytest.raises(InvalidArgumentError, match="unreachable"):
            pipeline.simulate_records(
                get_preset("squeezed"), seed=1, records_per_group=5, atom_numbers=(1000, 2000)
            )

    def test_invalid_record_count(self, pipeline):
        with pytest.raises(InvalidArgumentError):
            pipeline.simulate_records(get_preset("squeezed"), seed=1, records_per_group=0)

    def test_sample_state(self, pipeline):
        data = pipeline.sample_state(StateModel.gaussian(1.0), 100, seed=2)
        assert data.n_samples == 100


class TestCalibration:
    """Tests for the calibration stage."""

    def test_experiment_corpus_calibrates(self, calibration):
        model, _ = calibration
        assert model.zeta_n_atoms == 290_000
        assert efficiency(model, 290_000) == pytest.approx(0.83, abs=0.04)

    def test_noise_budget_spans_calibrated_range(self, pipeline, calibration):
        budget = pipeline.noise_budget(calibration[0], points=5)
        assert budget["n_atoms"].tolist() == [0.0, 72_500.0, 145_000.0, 217_500.0, 290_000.0]


class TestLoadDataset:
    """Tests for resolving input files into normalized samples."""

    def test_reads_jbar_file(self, tmp_path, pipeline):
        data = pipeline.sample_state(StateModel.gaussian(1.0), 50, seed=0)
        path = write_dataset(data, tmp_path / "jbar.csv")
        np.testing.assert_array_equal(pipeline.load_dataset(path).samples, data.samples)

    def test_records_need_calibration(self, tmp_path, pipeline):
        records = pipeline.simulate_records(get_preset("squeezed"), seed=1, records_per_group=5)
        path = write_records(records, tmp_path / "records.csv")
        with pytest.raises(InvalidArgumentError, match="calibration"):
            pipeline.load_dataset(path)

    def test_single_group_is_normalized(self, tmp_path, pipeline, calibration):
        records = pipeline.simulate_records(get_preset("squeezed"), seed=1)
        path = write_records(records, tmp_path / "records.csv")

        data = pipeline.load_dataset(path, calibration[1])

        assert data.n_samples == 4841
        assert data.meta.n_atoms == 290_000
        assert data.samples.var() == pytest.approx(0.681, abs=0.06)

    def test_low_efficiency_group_needs_force(self, tmp_path, pipeline, calibration):
        records = pipeline.simulate_records(
            get_preset("squeezed"), seed=1, records_per_group=20, atom_numbers=(50_000,),
            variance=1.0,
        )
        path = write_records(records, tmp_path / "records.csv")
        with pytest.raises(EfficiencyRejectedError):
            pipeline.load_dataset(path, calibration[1])
        assert pipeline.load_dataset(path, calibration[1], force=True).n_samples == 20

    def test_corpus_keeps_passing_groups(self, tmp_path, pipeline, calibration):
        records = pipeline.simulate_records(
            get_preset("experiment"), seed=4, records_per_group=10
        )
        path = write_records(records, tmp_path / "records.csv")
        data = pipeline.load_dataset(path, calibration[1])
        assert data.n_samples % 10 == 0
        assert 10 <= data.n_samples < 80


class TestAnalysis:
    """Tests for estimation, scans and oracle curves."""

    def test_estimate(self, pipeline):
        data = pipeline.sample_state(StateModel.gaussian(0.681), 4841, seed=0)
        result = pipeline.estimate(data, 1.1)
        assert result.sigma < 0
        assert result.estimate.phi_grid.size == 121

    def test_scan_checks_widths(self, pipeline):
        data = pipeline.sample_state(StateModel.gaussian(1.0), 100, seed=0)
        with pytest.raises(InvalidArgumentError, match="outside"):
            pipeline.scan(data, [1.0, 4.0])

    def test_oracle_curves_for_vacuum(self, pipeline):
        curves = pipeline.oracle_curves(StateModel.gaussian(1.0), 1.0)
        assert set(curves) == {"j_phi", "aqqp", "density", "filter_ft"}
        np.testing.assert_allclose(curves["aqqp"], curves["filter_ft"], rtol=1e-12, atol=1e-15)

    def test_histogram(self, pipeline):
        data = pipeline.sample_state(StateModel.gaussian(1.0), 1000, seed=0)
        histogram = pipeline.histogram(data)
        assert histogram["j"].size == 60
        assert histogram["density"].sum() * 0.2 == pytest.approx(1.0)
