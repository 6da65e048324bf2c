"""AQQP - atomic quadrature quasiprobabilities from sampled quadrature data."""

__version__ = "0.1.0"
