"""Test suite for the atomic quadrature quasiprobability toolkit."""
