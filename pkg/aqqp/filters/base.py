"""Base kernels for autocorrelation filters and the kernel registry."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from aqqp.core.errors import InvalidArgumentError

# Exponent value beyond which a kernel is treated as zero: e^{-256} ~ 1e-111.
SUPPORT_EXPONENT = 256.0


class BaseKernel(ABC):
    """A positive, even base kernel omega(k) = exp(-E(k))."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the registry name of the kernel."""

    @abstractmethod
    def exponent(self, k: np.ndarray) -> np.ndarray:
        """Return E(k) >= 0 with omega(k) = exp(-E(k))."""

    @property
    @abstractmethod
    def support(self) -> float:
        """Half-width R of the effective support, E(R) = SUPPORT_EXPONENT."""

    def __call__(self, k: np.ndarray | float) -> np.ndarray:
        """Evaluate omega(k)."""
        return np.exp(-self.exponent(np.asarray(k, dtype=np.float64)))

    def cache_key(self) -> str:
        """Return a string identifying the kernel in cache keys."""
        return self.name


class PowerExponentialKernel(BaseKernel):
    """omega(k) = exp(-k^(2p)) for an integer power p >= 2."""

    def __init__(self, power: int = 2) -> None:
        if int(power) != power or power < 2:
            raise InvalidArgumentError(f"kernel power must be an integer >= 2, got {power}")
        self.power = int(power)

    @property
    def name(self) -> str:
        return "quartic" if self.power == 2 else f"power{2 * self.power}"

    def exponent(self, k: np.ndarray) -> np.ndarray:
        return np.asarray(k, dtype=np.float64) ** (2 * self.power)

    @property
    def support(self) -> float:
        return SUPPORT_EXPONENT ** (1.0 / (2 * self.power))

    def __repr__(self) -> str:
        return f"PowerExponentialKernel(power={self.power})"


# Registry of available kernels
_KERNEL_REGISTRY: dict[str, BaseKernel] = {}


def register_kernel(kernel: BaseKernel) -> None:
    """Register a kernel instance under its name.

    Args:
        kernel: Kernel implementing BaseKernel
    """
    _KERNEL_REGISTRY[kernel.name] = kernel


def get_kernel(name: str) -> BaseKernel:
    """Get a registered kernel by name.

    Args:
        name: Name of the kernel

    Returns:
        The registered kernel instance

    Raises:
        InvalidArgumentError: If kernel name is not registered
    """
    if name not in _KERNEL_REGISTRY:
        available = list(_KERNEL_REGISTRY.keys())
        raise InvalidArgumentError(f"Unknown kernel '{name}'. Available: {available}")
    return _KERNEL_REGISTRY[name]


def list_kernels() -> list[str]:
    """List all registered kernel names."""
    return list(_KERNEL_REGISTRY.keys())


register_kernel(PowerExponentialKernel(2))
register_kernel(PowerExponentialKernel(3))
register_kernel(PowerExponentialKernel(4))
