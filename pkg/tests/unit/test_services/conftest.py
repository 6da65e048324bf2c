"""Shared fixtures for estimator tests."""

import pytest

from aqqp.core.config import AnalysisConfig
from aqqp.filters.autocorrelation import make_filter
from aqqp.pattern.table import build_pattern_table


@pytest.fixture(scope="session")
def vacuum_table():
    """Pattern table of the w = 1 filter on a reduced grid."""
    return build_pattern_table(make_filter(1.0), x_max=12.0, spacing=0.01)


@pytest.fixture
def fast_config(tmp_path):
    """Configuration with a coarse j_phi grid and a reduced table grid."""
    return AnalysisConfig().with_overrides(
        x_max=12.0,
        table_spacing=0.01,
        phi_step=0.1,
        cache_dir=tmp_path / "patterns",
    )
