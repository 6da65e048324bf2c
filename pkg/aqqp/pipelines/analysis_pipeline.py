"""End-to-end analysis: simulate, calibrate, normalize, estimate and scan."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from aqqp.calibration.model import CalibrationModel, calibrate, noise_budget
from aqqp.calibration.normalize import (
    is_dataset_file,
    normalize,
    normalize_corpus,
    read_dataset,
)
from aqqp.calibration.records_io import read_records
from aqqp.core.errors import InvalidArgumentError
from aqqp.filters.autocorrelation import filter_fourier_transform, make_filter
from aqqp.pipelines.presets import REFERENCE_ATOMS, REFERENCE_EFFICIENCY, Preset
from aqqp.services.estimator import AqqpEstimator, empirical_density, significance
from aqqp.states.oracle import analytic_aqqp, quadrature_density
from aqqp.states.records import ProbeParameters, TechnicalNoise, simulate_acs_sweep
from aqqp.states.sampling import sample_quadratures

if TYPE_CHECKING:
    from pathlib import Path

    import pandas as pd

    from aqqp.core.config import AnalysisConfig
    from aqqp.core.models import AqqpEstimate, QuadratureDataset, RawRecord, SignificanceScan
    from aqqp.states.models import StateModel

LOGGER = logging.getLogger("aqqp.pipelines.analysis_pipeline")


@dataclass(frozen=True)
class EstimateResult:
    """An AQQP estimate with its negativity significance."""

    estimate: AqqpEstimate
    sigma: float
    at_phi: float


class AnalysisPipeline:
    """Pipeline wiring the calibration, estimation and oracle stages."""

    def __init__(self, config: AnalysisConfig, estimator: AqqpEstimator | None = None):
        """Initialize the pipeline.

        Args:
            config: Resolved analysis settings
            estimator: Estimator to use; one bound to ``config`` by default
        """
        self.config = config
        self.estimator = estimator or AqqpEstimator(config)

    # ------------------------------------------------------------------
    # Data sources
    # ------------------------------------------------------------------

    @staticmethod
    def probe(
        efficiency: float = REFERENCE_EFFICIENCY,
        n_atoms: int = REFERENCE_ATOMS,
    ) -> ProbeParameters:
        """Probe whose detection efficiency is ``efficiency`` at ``n_atoms``."""
        return ProbeParameters.matched_to_efficiency(efficiency, n_atoms)

    def simulate_records(
        self,
        preset: Preset,
        seed: int,
        records_per_group: int | None = None,
        variance: float | None = None,
        atom_numbers: tuple[int, ...] | None = None,
        technical: TechnicalNoise | None = None,
    ) -> list[RawRecord]:
        """Simulate a record corpus for ``preset`` (arguments override its fields)."""
        n_per_group = preset.records_per_group if records_per_group is None else records_per_group
        if n_per_group < 1:
            raise InvalidArgumentError(f"record count must be >= 1, got {n_per_group}")
        return simulate_acs_sweep(
            self.probe(),
            technical or preset.technical,
            atom_numbers=atom_numbers or preset.atom_numbers,
            n_per_group=n_per_group,
            seed=seed,
            true_variance=preset.simulated_variance if variance is None else variance,
        )

    def sample_state(self, state: StateModel, n_samples: int, seed: int) -> QuadratureDataset:
        """Draw normalized samples directly from an analytic state."""
        return sample_quadratures(state, n_samples, seed)

    def calibrate(self, records: list[RawRecord]) -> CalibrationModel:
        """Fit a calibration model to a record corpus."""
        return calibrate(records)

    def noise_budget(self, model: CalibrationModel, points: int = 30) -> pd.DataFrame:
        """Noise contributions of ``model`` over its calibrated atom-number range."""
        upper = max(model.zeta_n_atoms, 1)
        return noise_budget(model, np.linspace(0.0, upper, points))

    def load_dataset(
        self,
        path: Path,
        calibration_path: Path | None = None,
        force: bool = False,
    ) -> QuadratureDataset:
        """Load normalized samples, normalizing raw records when needed.

        A ``jbar`` file is read as is. A record file needs a calibration; records
        at a single atom number are normalized (``force`` overrides the
        efficiency threshold), a multi-group corpus keeps only the groups that
        pass the threshold.
        """
        if is_dataset_file(path):
            return read_dataset(path)
        if calibration_path is None:
            raise InvalidArgumentError(f"{path} holds raw records; pass a calibration file")

        model = CalibrationModel.from_json(calibration_path)
        records = read_records(path)
        threshold = self.config.efficiency_threshold
        if len({r.n_atoms for r in records}) == 1:
            return normalize(records, model, threshold=threshold, force=force, source=str(path))
        return normalize_corpus(records, model, threshold=threshold, source=str(path))

    # ------------------------------------------------------------------
    # Analysis
    # ------------------------------------------------------------------

    def estimate(self, data: QuadratureDataset, width: float) -> EstimateResult:
        """Estimate the AQQP at ``width`` and its significance."""
        estimate = self.estimator.estimate(data, width)
        sigma, at_phi = significance(estimate)
        LOGGER.info(
            "w=%.4g, N=%d: Sigma=%.2f at j_phi=%.3f", width, data.n_samples, sigma, at_phi
        )
        return EstimateResult(estimate=estimate, sigma=sigma, at_phi=at_phi)

    def scan(
        self,
        data: QuadratureDataset,
        widths: list[float] | None = None,
    ) -> SignificanceScan:
        """Scan Sigma(w) over ``widths`` (the configured scan by default)."""
        for width in widths or []:
            self.config.check_width(width)
        scan = self.estimator.scan(data, widths)
        best_width, best_sigma, best_phi = scan.best()
        LOGGER.info("Best width %.4g: Sigma=%.2f at j_phi=%.3f", best_width, best_sigma, best_phi)
        return scan

    def oracle_curves(self, state: StateModel, width: float) -> dict[str, np.ndarray]:
        """Analytic AQQP, quadrature density and filter transform on the j_phi grid."""
        width = self.config.check_width(width)
        f = make_filter(
            width,
            rel_tol=self.config.rel_tol,
            kernel=self.config.kernel,
            memo_spacing=self.config.memo_spacing,
        )
        grid = self.config.phi_grid()
        return {
            "j_phi": grid,
            "aqqp": analytic_aqqp(state, f, grid, self.config.workers),
            "density": quadrature_density(state, grid),
            "filter_ft": filter_fourier_transform(f, grid, self.config.workers),
        }

    def histogram(self, data: QuadratureDataset) -> dict[str, np.ndarray]:
        """Empirical density of ``data`` over the j_phi range."""
        centres, density = empirical_density(
            data, bins=60, value_range=(self.config.phi_min, self.config.phi_max)
        )
        return {"j": centres, "density": density}
