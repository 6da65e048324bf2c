"""Arguments and helpers shared by several subcommands."""
# ruff: noqa: T201

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from aqqp.core.config import AnalysisConfig
from aqqp.core.hashing import settings_hash
from aqqp.pipelines.presets import get_preset, list_presets

if TYPE_CHECKING:
    from aqqp.core.errors import AqqpError
    from aqqp.core.models import QuadratureDataset
    from aqqp.pipelines.analysis_pipeline import AnalysisPipeline
    from aqqp.pipelines.presets import Preset

DEFAULT_PRESET = "squeezed"


def add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the j_phi grid flags."""
    parser.add_argument("--phi-min", type=float, help="Lower end of the j_phi grid (default: -6)")
    parser.add_argument("--phi-max", type=float, help="Upper end of the j_phi grid (default: 6)")
    parser.add_argument("--phi-step", type=float, help="Spacing of the j_phi grid (default: 0.05)")


def add_source_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the flags selecting the analysed data."""
    parser.add_argument(
        "--input",
        type=Path,
        help="Normalized 'jbar' CSV or raw record CSV (default: sample the preset state)",
    )
    parser.add_argument(
        "--calibration",
        type=Path,
        help="Calibration JSON used to normalize a raw record file",
    )
    parser.add_argument(
        "--preset",
        choices=list_presets(),
        default=None,
        help=f"Parameter preset used without --input (default: {DEFAULT_PRESET})",
    )
    parser.add_argument(
        "--samples",
        type=int,
        help="Number of samples drawn from the preset state (default: preset value)",
    )
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument(
        "--efficiency-threshold",
        type=float,
        help="Minimum detection efficiency of normalized records (default: 0.77)",
    )
    parser.add_argument(
        "--force",
        action="store_true",
        help="Normalize records even if their efficiency is below the threshold",
    )


def load_config(args: argparse.Namespace) -> AnalysisConfig:
    """Resolve settings: defaults < YAML < environment < command-line flags."""
    config = AnalysisConfig.load(getattr(args, "config", None))
    return config.with_overrides(
        phi_min=getattr(args, "phi_min", None),
        phi_max=getattr(args, "phi_max", None),
        phi_step=getattr(args, "phi_step", None),
        efficiency_threshold=getattr(args, "efficiency_threshold", None),
        workers=getattr(args, "workers", None),
    )


def resolve_preset(args: argparse.Namespace) -> Preset:
    """Return the preset named on the command line, or the default one."""
    return get_preset(getattr(args, "preset", None) or DEFAULT_PRESET)


def load_data(args: argparse.Namespace, pipeline: AnalysisPipeline) -> QuadratureDataset:
    """Load ``--input`` or sample the preset state."""
    if args.input is not None:
        return pipeline.load_dataset(args.input, args.calibration, force=args.force)
    preset = resolve_preset(args)
    n_samples = preset.n_samples if args.samples is None else args.samples
    return pipeline.sample_state(preset.state, n_samples, args.seed)


def data_settings(args: argparse.Namespace) -> dict[str, object]:
    """Settings describing where the analysed data came from."""
    if args.input is not None:
        return {"input": Path(args.input).name, "force": bool(args.force)}
    return {
        "preset": resolve_preset(args).name,
        "samples": args.samples,
        "seed": args.seed,
    }


def run_hash(config: AnalysisConfig, **extra: object) -> str:
    """Settings hash of the numeric configuration plus command-specific values."""
    return settings_hash({**config.numeric_settings(), **extra})


def report_failure(label: str, error: AqqpError | Exception, verbose: bool) -> int:
    """Print a failure message and return the error's exit code."""
    print(f"✗ {label} failed: {error}")
    if verbose:
        import traceback
        traceback.print_exc()
    return getattr(error, "exit_code", 1)
