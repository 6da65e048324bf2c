"""Calibrate command - Fit the noise model of a record corpus."""
# ruff: noqa: T201

import argparse
from pathlib import Path

from aqqp.calibration.model import efficiency
from aqqp.calibration.records_io import read_records
from aqqp.cli.commands.common import load_config, report_failure, run_hash
from aqqp.core.errors import AqqpError
from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
from aqqp.services.export import write_curves


def add_arguments(parser: argparse.ArgumentParser) -> None:
    """Add command-specific arguments."""
    parser.add_argument(
        "--input", "-i",
        type=Path,
        required=True,
        help="Record CSV of a calibration run"
    )

    parser.add_argument(
        "--output", "-o",
        type=Path,
        required=True,
        help="Calibration JSON to write"
    )

    parser.add_argument(
        "--budget",
        type=Path,
        help="Also write the noise budget over the calibrated range as CSV"
    )


def execute(args: argparse.Namespace) -> int:
    """Execute the calibrate command."""
    try:
        config = load_config(args)
        pipeline = AnalysisPipeline(config)
        records = read_records(args.input)
        model = pipeline.calibrate(records)
        digest = run_hash(config, input=args.input.name)
        model.to_json(args.output, settings_hash=digest)
        if args.budget is not None:
            budget = pipeline.noise_budget(model)
            write_curves({name: budget[name].to_numpy() for name in budget}, args.budget, digest)
    except AqqpError as e:
        return report_failure("Calibrate", e, args.verbose)

    print(f"✓ Calibration {model.calibration_id} written to {args.output}")
    print(f"  a0 = {model.a0:.4g} rad^2, a1 = {model.a1:.4g} rad^2/atom, a2 = {model.a2:.4g}")
    print(f"  eta = {model.eta:.4f}, zeta = {model.zeta:.4f} at N_a = {model.zeta_n_atoms}")
    reach = efficiency(model, model.zeta_n_atoms)
    print(f"  efficiency at N_a = {model.zeta_n_atoms}: {reach:.4f}")
    return 0
