"""Estimation services built on pattern tables."""

from aqqp.services.estimator import (
    AqqpEstimator,
    empirical_density,
    estimate_aqqp,
    scan_width,
    significance,
)
from aqqp.services.export import write_curves, write_estimate, write_scan

__all__ = [
    "AqqpEstimator",
    "empirical_density",
    "estimate_aqqp",
    "scan_width",
    "significance",
    "write_curves",
    "write_estimate",
    "write_scan",
]
