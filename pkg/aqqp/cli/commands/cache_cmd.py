"""Cache command - Inspect or wipe the pattern-table cache."""
# ruff: noqa: T201

import argparse

from aqqp.cli.commands.common import load_config, report_failure
from aqqp.core.errors import AqqpError
from aqqp.pattern.cache import PatternCache


def add_arguments(parser: argparse.ArgumentParser) -> None:
    """Add command-specific arguments."""
    parser.add_argument(
        "--wipe",
        action="store_true",
        help="Delete every cached pattern table"
    )


def execute(args: argparse.Namespace) -> int:
    """Execute the cache command."""
    try:
        config = load_config(args)
        cache = PatternCache(config.cache_dir)
        if args.wipe:
            removed = cache.wipe()
            print(f"✓ Removed {removed} cached pattern tables from {config.cache_dir}")
            return 0
        tables = cache.tables()
    except AqqpError as e:
        return report_failure("Cache", e, args.verbose)

    print(f"Pattern-table cache: {config.cache_dir}")
    print(f"  {len(tables)} cached tables")
    for path in tables:
        print(f"  {path.name}")
    return 0
