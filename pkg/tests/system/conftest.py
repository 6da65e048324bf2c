"""Shared fixtures for system-level tests."""

import pytest

from aqqp.cli.main import main


@pytest.fixture
def workspace(tmp_path):
    """Temporary directory for command outputs."""
    root = tmp_path / "run"
    root.mkdir()
    return root


@pytest.fixture
def calibration_file(workspace):
    """Calibration JSON fitted from a simulated sweep through the CLI."""
    records = workspace / "sweep.csv"
    output = workspace / "calibration.json"
    assert main(["simulate", "--preset", "experiment", "-n", "1000", "-o", str(records)]) == 0
    assert main(["calibrate", "-i", str(records), "-o", str(output)]) == 0
    return output
