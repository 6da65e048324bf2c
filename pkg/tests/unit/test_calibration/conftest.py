"""Shared fixtures for calibration tests."""

import pytest

from aqqp.calibration.model import CalibrationModel
from aqqp.states.records import ProbeParameters, TechnicalNoise, optimal_zeta

N_ATOMS = 290_000


@pytest.fixture
def probe():
    """Probe reaching 83 % detection efficiency at 2.9e5 atoms."""
    return ProbeParameters.matched_to_efficiency(0.83, N_ATOMS)


@pytest.fixture
def true_model(probe):
    """Calibration model holding the generating coefficients of ``probe``."""
    return CalibrationModel(
        a0=probe.a0,
        a1=probe.kappa**2,
        a2=0.0,
        zeta=optimal_zeta(probe, TechnicalNoise(), N_ATOMS),
        zeta_n_atoms=N_ATOMS,
    )
