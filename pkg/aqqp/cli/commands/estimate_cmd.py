"""Estimate command - Sample the AQQP and its negativity significance."""
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
    resolve_preset,
    run_hash,
)
from aqqp.core.errors import AqqpError
from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
from aqqp.services.export import estimate_summary, write_curves, write_estimate


def add_arguments(parser: argparse.ArgumentParser) -> None:
    """Add command-specific arguments."""
    add_source_arguments(parser)
    add_grid_arguments(parser)

    parser.add_argument(
        "--width", "-w",
        type=float,
        help="Filter width (default: preset width)"
    )

    parser.add_argument(
        "--output", "-o",
        type=Path,
        help="Estimate CSV (j_phi, p, se); a JSON summary is written next to it"
    )

    parser.add_argument(
        "--histogram",
        type=Path,
        help="Also write the empirical density of the samples as CSV"
    )


def execute(args: argparse.Namespace) -> int:
    """Execute the estimate command."""
    try:
        config = load_config(args)
        width = resolve_preset(args).width if args.width is None else args.width
        config.check_width(width)
        pipeline = AnalysisPipeline(config)
        data = load_data(args, pipeline)
        result = pipeline.estimate(data, width)
        digest = run_hash(config, width=width, **data_settings(args))
        if args.output is not None:
            write_estimate(result.estimate, args.output, settings_hash=digest, data=data)
        if args.histogram is not None:
            write_curves(pipeline.histogram(data), args.histogram, digest)
    except AqqpError as e:
        return report_failure("Estimate", e, args.verbose)

    summary = estimate_summary(result.estimate, digest, data)
    print(f"✓ AQQP estimate from {summary['n_samples']} samples at w = {width:g}")
    print(f"  Sigma = {summary['sigma']:.3f} at j_phi = {summary['at_phi']:.3f}")
    if result.sigma < 0:
        print(f"  Negativity at {abs(result.sigma):.1f} standard errors")
    print(f"  settings_hash = {digest}")
    if args.output is not None:
        print(f"  Written to {args.output}")
    return 0
