"""Simulate command - Write synthetic two-pulse records."""
# ruff: noqa: T201

import argparse
from pathlib import Path

from aqqp.calibration.records_io import write_records
from aqqp.cli.commands.common import load_config, report_failure, resolve_preset, run_hash
from aqqp.core.errors import AqqpError
from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
from aqqp.pipelines.presets import list_presets


def add_arguments(parser: argparse.ArgumentParser) -> None:
    """Add command-specific arguments."""
    parser.add_argument(
        "--output", "-o",
        type=Path,
        required=True,
        help="Record CSV to write"
    )

    parser.add_argument(
        "--preset",
        choices=list_presets(),
        default="experiment",
        help="Simulation preset (default: experiment, the calibration sweep)"
    )

    parser.add_argument(
        "--records", "-n",
        type=int,
        help="Records per atom number (default: preset value)"
    )

    parser.add_argument(
        "--variance",
        type=float,
        help="Normalized quadrature variance of the records (default: preset value)"
    )

    parser.add_argument(
        "--n-atoms",
        type=int,
        nargs="+",
        help="Atom numbers to simulate (default: preset sweep)"
    )

    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Random seed (default: 0)"
    )


def execute(args: argparse.Namespace) -> int:
    """Execute the simulate command."""
    try:
        config = load_config(args)
        preset = resolve_preset(args)
        pipeline = AnalysisPipeline(config)
        atom_numbers = tuple(args.n_atoms) if args.n_atoms else None
        records = pipeline.simulate_records(
            preset,
            seed=args.seed,
            records_per_group=args.records,
            variance=args.variance,
            atom_numbers=atom_numbers,
        )
        digest = run_hash(
            config,
            preset=preset.name,
            records=args.records,
            variance=args.variance,
            n_atoms=list(atom_numbers or preset.atom_numbers),
            seed=args.seed,
        )
        write_records(records, args.output, settings_hash=digest, extra={"preset": preset.name})
    except AqqpError as e:
        return report_failure("Simulate", e, args.verbose)

    groups = len({record.n_atoms for record in records})
    print(f"✓ Wrote {len(records)} records in {groups} atom-number groups to {args.output}")
    return 0
