"""Regularizing filters and their base kernels."""

from aqqp.filters.autocorrelation import (
    FilterSpec,
    eval_filter,
    filter_fourier_transform,
    make_filter,
)
from aqqp.filters.base import BaseKernel, get_kernel, list_kernels, register_kernel

__all__ = [
    "BaseKernel",
    "FilterSpec",
    "eval_filter",
    "filter_fourier_transform",
    "get_kernel",
    "list_kernels",
    "make_filter",
    "register_kernel",
]
