"""Calibration of two-pulse records into normalized quadrature samples."""

from aqqp.calibration.model import (
    CalibrationModel,
    acs_variance,
    calibrate,
    efficiency,
    noise_budget,
    predicted_zeta,
)
from aqqp.calibration.noise_scaling import (
    NoiseGroup,
    NoiseScalingFit,
    differenced_groups,
    fit_noise_scaling,
    fit_zeta,
)
from aqqp.calibration.normalize import (
    normalize,
    normalize_corpus,
    read_dataset,
    write_dataset,
)
from aqqp.calibration.records_io import read_records, write_records

__all__ = [
    "CalibrationModel",
    "NoiseGroup",
    "NoiseScalingFit",
    "acs_variance",
    "calibrate",
    "differenced_groups",
    "efficiency",
    "fit_noise_scaling",
    "fit_zeta",
    "noise_budget",
    "normalize",
    "normalize_corpus",
    "predicted_zeta",
    "read_dataset",
    "read_records",
    "write_dataset",
    "write_records",
]
