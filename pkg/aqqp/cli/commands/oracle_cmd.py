"""Oracle command - Dump analytic curves of a state."""
# ruff: noqa: T201

import argparse
from pathlib import Path

from aqqp.cli.commands.common import (
    add_grid_arguments,
    load_config,
    report_failure,
    resolve_preset,
    run_hash,
)
from aqqp.core.errors import AqqpError
from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
from aqqp.pipelines.presets import list_presets
from aqqp.services.export import write_curves
from aqqp.states.models import (
    StateKind,
    StateModel,
    db_from_variance,
    variance_from_db,
    with_detection_efficiency,
)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    """Add command-specific arguments."""
    add_grid_arguments(parser)

    parser.add_argument(
        "--preset",
        choices=list_presets(),
        help="Take state and width from a preset (default: squeezed)"
    )

    state_group = parser.add_mutually_exclusive_group()
    state_group.add_argument(
        "--variance",
        type=float,
        help="Gaussian state with this variance instead of the preset state"
    )

    state_group.add_argument(
        "--squeezing-db",
        type=float,
        metavar="DB",
        help="Gaussian state squeezed this many dB below the ground-state noise"
    )

    state_group.add_argument(
        "--single-excitation",
        type=float,
        metavar="EFFICIENCY",
        help="Single excitation detected at this efficiency instead of the preset state"
    )

    parser.add_argument(
        "--detection-efficiency",
        type=float,
        metavar="EFFICIENCY",
        help="View the state through a detector of this efficiency (added Gaussian noise)"
    )

    parser.add_argument(
        "--width", "-w",
        type=float,
        help="Filter width (default: preset width)"
    )

    parser.add_argument(
        "--output", "-o",
        type=Path,
        required=True,
        help="CSV with columns j_phi, aqqp, density, filter_ft"
    )


def execute(args: argparse.Namespace) -> int:
    """Execute the oracle command."""
    try:
        config = load_config(args)
        preset = resolve_preset(args)
        state = preset.state
        if args.variance is not None:
            state = StateModel.gaussian(args.variance)
        elif args.single_excitation is not None:
            state = StateModel.single_excitation(args.single_excitation)
        elif args.squeezing_db is not None:
            state = StateModel.gaussian(variance_from_db(args.squeezing_db))
        if args.detection_efficiency is not None:
            state = with_detection_efficiency(state, args.detection_efficiency)
        width = preset.width if args.width is None else args.width

        curves = AnalysisPipeline(config).oracle_curves(state, width)
        digest = run_hash(config, state=state.describe(), width=width)
        write_curves(curves, args.output, digest)
    except AqqpError as e:
        return report_failure("Oracle", e, args.verbose)

    aqqp = curves["aqqp"]
    print(f"✓ Analytic curves of {state.describe()} at w = {width:g} written to {args.output}")
    print(f"  min AQQP = {aqqp.min():.4g}, max AQQP = {aqqp.max():.4g}")
    if state.kind is StateKind.GAUSSIAN:
        squeezing = db_from_variance(state.variance)
        print(f"  quadrature variance {state.variance:.4g} ({squeezing:.3g} dB below ground state)")
    return 0
