"""Scan command - Negativity significance versus filter width."""
# ruff: noqa: T201

import argparse
from pathlib import Path

from aqqp.cli.commands.common import (
    add_grid_arguments,
    add_source_arguments,
    data_settings,
    load_config,
    load_data,
    report_failure,
    run_hash,
)
from aqqp.core.errors import AqqpError
from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
from aqqp.services.export import write_scan


def add_arguments(parser: argparse.ArgumentParser) -> None:
    """Add command-specific arguments."""
    add_source_arguments(parser)
    add_grid_arguments(parser)

    parser.add_argument(
        "--widths",
        type=float,
        nargs="+",
        help="Increasing filter widths (default: 30 log-spaced widths in [0.4, 3.0])"
    )

    parser.add_argument(
        "--output", "-o",
        type=Path,
        help="Scan CSV (w, sigma, at_phi); a JSON summary is written next to it"
    )


def execute(args: argparse.Namespace) -> int:
    """Execute the scan command."""
    try:
        config = load_config(args)
        pipeline = AnalysisPipeline(config)
        data = load_data(args, pipeline)
        scan = pipeline.scan(data, args.widths)
        digest = run_hash(config, widths=args.widths, **data_settings(args))
        if args.output is not None:
            write_scan(scan, args.output, settings_hash=digest, n_samples=data.n_samples)
    except AqqpError as e:
        return report_failure("Scan", e, args.verbose)

    print(f"✓ Width scan over {scan.widths.size} widths ({data.n_samples} samples)")
    for width, sigma, at_phi in zip(scan.widths, scan.sigma, scan.argmin_phi, strict=True):
        print(f"  w = {width:7.4f}   Sigma = {sigma:8.3f}   at j_phi = {at_phi:6.3f}")
    best_width, best_sigma, _ = scan.best()
    print(f"  Most negative: Sigma = {best_sigma:.3f} at w = {best_width:.4f}")
    if args.output is not None:
        print(f"  Written to {args.output}")
    return 0
