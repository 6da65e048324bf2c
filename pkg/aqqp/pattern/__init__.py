"""Pattern-function tables and their on-disk cache."""

from aqqp.pattern.cache import PatternCache
from aqqp.pattern.table import (
    PatternTable,
    build_pattern_table,
    direct_pattern_value,
    eval_pattern,
)

__all__ = [
    "PatternCache",
    "PatternTable",
    "build_pattern_table",
    "direct_pattern_value",
    "eval_pattern",
]
