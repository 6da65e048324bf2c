"""Analytic state models, oracles and synthetic data generators."""

from aqqp.states.models import (
    StateKind,
    StateModel,
    db_from_variance,
    variance_from_db,
    with_detection_efficiency,
)
from aqqp.states.oracle import (
    Quasiprob2D,
    analytic_aqqp,
    analytic_quasiprob2d,
    char_function,
    quadrature_density,
)
from aqqp.states.records import (
    ProbeParameters,
    TechnicalNoise,
    optimal_zeta,
    simulate_acs_sweep,
    simulate_records,
)
from aqqp.states.sampling import sample_quadratures

__all__ = [
    "ProbeParameters",
    "Quasiprob2D",
    "StateKind",
    "StateModel",
    "TechnicalNoise",
    "analytic_aqqp",
    "analytic_quasiprob2d",
    "char_function",
    "db_from_variance",
    "optimal_zeta",
    "quadrature_density",
    "sample_quadratures",
    "simulate_acs_sweep",
    "simulate_records",
    "variance_from_db",
    "with_detection_efficiency",
]
