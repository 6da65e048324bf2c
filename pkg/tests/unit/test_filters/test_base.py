"""Tests for base kernels and the kernel registry."""

import numpy as np
import pytest

from aqqp.core.errors import InvalidArgumentError
from aqqp.filters.base import PowerExponentialKernel, get_kernel, list_kernels


def test_registered_kernels():
    assert {"quartic", "power6", "power8"} <= set(list_kernels())


def test_unknown_kernel():
    with pytest.raises(InvalidArgumentError, match="Unknown kernel"):
        get_kernel("gaussian")


@pytest.mark.parametrize("power", [1, 2.5, 0])
def test_power_must_be_integer_at_least_two(power):
    with pytest.raises(InvalidArgumentError):
        PowerExponentialKernel(power)


def test_quartic_values():
    kernel = get_kernel("quartic")
    np.testing.assert_allclose(kernel(np.array([0.0, 1.0, -1.0])), [1.0, np.exp(-1), np.exp(-1)])
    assert kernel.support == pytest.approx(4.0)


def test_support_marks_negligible_kernel():
    for name in ("quartic", "power6", "power8"):
        kernel = get_kernel(name)
        assert kernel(kernel.support) == pytest.approx(np.exp(-256.0))


def test_names_follow_power():
    assert PowerExponentialKernel(3).name == "power6"
    assert get_kernel("power8").cache_key() == "power8"
