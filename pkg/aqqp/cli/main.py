"""Main CLI entry point for the AQQP toolkit."""
# ruff: noqa: T201

import argparse
import logging
import sys
from pathlib import Path

from aqqp import __version__
from aqqp.cli.commands import (
    cache_cmd,
    calibrate_cmd,
    estimate_cmd,
    oracle_cmd,
    scan_cmd,
    simulate_cmd,
)

_COMMANDS = {
    "simulate": simulate_cmd,
    "calibrate": calibrate_cmd,
    "estimate": estimate_cmd,
    "scan": scan_cmd,
    "oracle": oracle_cmd,
    "cache": cache_cmd,
}


def create_parser() -> argparse.ArgumentParser:
    """Create the main argument parser with subcommands."""
    # Shared options available on every subcommand (and on the top-level parser)
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose output"
    )
    shared.add_argument(
        "--config",
        type=Path,
        help="Path to configuration file"
    )
    shared.add_argument(
        "--workers",
        type=int,
        help="Worker threads for table builds and estimation (default: 1)"
    )

    parser = argparse.ArgumentParser(
        prog="aqqp",
        description="Atomic quadrature quasiprobabilities - nonclassicality from quadrature data",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[shared],
        epilog="""
Examples:
  aqqp simulate --preset experiment -o calibration.csv
  aqqp calibrate -i calibration.csv -o calibration.json
  aqqp simulate --preset squeezed --seed 1 -o squeezed.csv
  aqqp estimate --input squeezed.csv --calibration calibration.json --width 1.1
  aqqp scan --preset squeezed -o scan.csv
  aqqp oracle --preset single-excitation -o oracle.csv
  aqqp cache --wipe
        """,
    )
    parser.add_argument("--version", action="version", version=f"aqqp {__version__}")

    # Create subparsers for commands
    subparsers = parser.add_subparsers(
        dest="command",
        help="Available commands",
        metavar="COMMAND"
    )

    # Simulate command
    simulate_parser = subparsers.add_parser(
        "simulate",
        parents=[shared],
        help="Write synthetic two-pulse records",
        description="Simulate phase-shift records over an atom-number sweep",
    )
    simulate_cmd.add_arguments(simulate_parser)

    # Calibrate command
    calibrate_parser = subparsers.add_parser(
        "calibrate",
        parents=[shared],
        help="Fit the noise model of a record corpus",
        description="Fit noise scaling, QND gain and efficiency from two-pulse records",
    )
    calibrate_cmd.add_arguments(calibrate_parser)

    # Estimate command
    estimate_parser = subparsers.add_parser(
        "estimate",
        parents=[shared],
        help="Estimate the AQQP and its negativity significance",
        description="Sample the AQQP at one filter width with pointwise standard errors",
    )
    estimate_cmd.add_arguments(estimate_parser)

    # Scan command
    scan_parser = subparsers.add_parser(
        "scan",
        parents=[shared],
        help="Scan the negativity significance over filter widths",
        description="Compute the significance Sigma(w) for a list of filter widths",
    )
    scan_cmd.add_arguments(scan_parser)

    # Oracle command
    oracle_parser = subparsers.add_parser(
        "oracle",
        parents=[shared],
        help="Dump analytic AQQP, quadrature density and filter transform",
        description="Evaluate exact curves of an analytic state on the j_phi grid",
    )
    oracle_cmd.add_arguments(oracle_parser)

    # Cache command
    cache_parser = subparsers.add_parser(
        "cache",
        parents=[shared],
        help="List or wipe cached pattern tables",
        description="Show the pattern-table cache directory and its tables, or delete them",
    )
    cache_cmd.add_arguments(cache_parser)

    return parser


def main(args: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    parsed_args = parser.parse_args(args)

    # If no command specified, show help
    if not parsed_args.command:
        parser.print_help()
        return 1

    # Set up logging configuration
    log_level = logging.DEBUG if parsed_args.verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    # Route to appropriate command handler
    try:
        return _COMMANDS[parsed_args.command].execute(parsed_args)

    except KeyboardInterrupt:
        print("\nOperation cancelled by user.")
        return 130
    except Exception as e:
        if parsed_args.verbose:
            import traceback
            traceback.print_exc()
        else:
            print(f"Error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
