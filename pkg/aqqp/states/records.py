"""Synthetic two-pulse phase-shift records.

Each cycle probes an ensemble of N_a atoms twice. The first (conditioning) pulse
reads phi1 = d1 + kappa dN + t, the second (verification) pulse reads
phi2 = d2 + sqrt(eta) (kappa dN + t) + s, where d1, d2 are light shot noise, dN
is the projection noise of the population difference, t is technical noise
shared by both pulses, eta is the contrast left after the first pulse and s is
the residual atomic fluctuation left after conditioning.
The variance of s is chosen so that the normalized quadrature
(phi2 - zeta* phi1) / sqrt(var_ACS) has exactly the requested variance.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from aqqp.core.errors import InvalidArgumentError
from aqqp.core.models import RawRecord

LOGGER = logging.getLogger("aqqp.states.records")

DEFAULT_N1_PHOTONS = 4.1e7
DEFAULT_PHOTON_RATIO = 1.5
DEFAULT_EPSILON = 1.02e-8
# Atom-number sweep of the calibration run.
DEFAULT_SWEEP = (0, 25_000, 50_000, 100_000, 150_000, 200_000, 250_000, 290_000)


@dataclass(frozen=True)
class ProbeParameters:
    """Light-atom coupling and shot-noise levels of the two probe pulses.

    Attributes:
        kappa: Phase shift per atom of population difference (rad).
        n1_photons: Photons in the first pulse.
        photon_ratio: n2 / n1; shot-noise variance scales as 1/n.
        epsilon: Decoherence (spontaneous emission) per photon.
        shot_noise_variance: First-pulse shot-noise variance a0 (rad^2); defaults to 1/n1.
    """

    kappa: float
    n1_photons: float = DEFAULT_N1_PHOTONS
    photon_ratio: float = DEFAULT_PHOTON_RATIO
    epsilon: float = DEFAULT_EPSILON
    shot_noise_variance: float | None = None

    def __post_init__(self) -> None:
        if self.kappa < 0:
            raise InvalidArgumentError(f"kappa must be nonnegative, got {self.kappa}")
        if not self.n1_photons > 0:
            raise InvalidArgumentError("n1_photons must be positive")
        if not self.photon_ratio > 0:
            raise InvalidArgumentError("photon_ratio must be positive")
        if self.epsilon < 0:
            raise InvalidArgumentError("epsilon must be nonnegative")
        if self.shot_noise_variance is not None and self.shot_noise_variance < 0:
            raise InvalidArgumentError("shot_noise_variance must be nonnegative")

    @classmethod
    def matched_to_efficiency(
        cls,
        efficiency: float,
        n_atoms: int,
        **kwargs: float,
    ) -> ProbeParameters:
        """Choose kappa so the detection efficiency equals ``efficiency`` at ``n_atoms``."""
        if not 0 < efficiency < 1:
            raise InvalidArgumentError(f"efficiency must lie in (0, 1), got {efficiency}")
        if n_atoms <= 0:
            raise InvalidArgumentError("n_atoms must be positive")
        template = cls(kappa=0.0, **kwargs)
        kappa_sq = efficiency / (1.0 - efficiency) * template.second_shot_noise / (
            template.eta * n_atoms
        )
        return cls(kappa=math.sqrt(kappa_sq), **kwargs)

    @property
    def a0(self) -> float:
        """First-pulse shot-noise variance (rad^2)."""
        if self.shot_noise_variance is not None:
            return self.shot_noise_variance
        return 1.0 / self.n1_photons

    @property
    def second_shot_noise(self) -> float:
        """Second-pulse shot-noise variance (rad^2)."""
        return self.a0 / self.photon_ratio

    @property
    def eta(self) -> float:
        """Contrast factor exp(-n1 epsilon)."""
        return math.exp(-self.n1_photons * self.epsilon)

    def acs_variance(self, n_atoms: float) -> float:
        """Second-pulse variance of an atomic coherent state with ``n_atoms`` atoms."""
        return self.second_shot_noise + self.kappa**2 * self.eta * n_atoms

    def efficiency(self, n_atoms: float) -> float:
        """Ground-truth detection efficiency at ``n_atoms``."""
        total = self.acs_variance(n_atoms)
        return 0.0 if total == 0 else (total - self.second_shot_noise) / total


@dataclass(frozen=True)
class TechnicalNoise:
    """Classical noise added on top of shot and projection noise.

    Attributes:
        a2: Technical variance per atom squared (rad^2), shared by both pulses.
        drift_std: Step size of a slow random-walk phase drift per cycle (rad).
    """

    a2: float = 0.0
    drift_std: float = 0.0

    def __post_init__(self) -> None:
        if self.a2 < 0 or self.drift_std < 0:
            raise InvalidArgumentError("technical noise levels must be nonnegative")


def optimal_zeta(probe: ProbeParameters, technical: TechnicalNoise, n_atoms: float) -> float:
    """Return zeta* = cov(phi1, phi2) / var(phi1) of the drift-free record model."""
    atomic = probe.kappa**2 * n_atoms + technical.a2 * n_atoms**2
    total = probe.a0 + atomic
    return 0.0 if total == 0 else math.sqrt(probe.eta) * atomic / total


def residual_variance(
    true_variance: float,
    probe: ProbeParameters,
    technical: TechnicalNoise,
    n_atoms: float,
) -> float:
    """Variance of the conditional atomic fluctuation s (rad^2)."""
    if n_atoms == 0:
        return 0.0
    atomic = probe.kappa**2 * n_atoms + technical.a2 * n_atoms**2
    total = probe.a0 + atomic
    conditional = 0.0 if total == 0 else probe.eta * probe.a0 * atomic / total
    residual = true_variance * probe.acs_variance(n_atoms) - probe.second_shot_noise - conditional
    if residual < 0:
        raise InvalidArgumentError(
            f"variance {true_variance} is unreachable at N_a={n_atoms}: "
            f"detection efficiency {probe.efficiency(n_atoms):.3f} is too low"
        )
    return residual


def simulate_records(
    true_variance: float,
    n_a: int,
    probe: ProbeParameters,
    technical: TechnicalNoise | None = None,
    n: int = 1000,
    seed: int = 0,
    first_cycle: int = 0,
) -> list[RawRecord]:
    """Simulate ``n`` consecutive measurement cycles at a fixed atom number.

    Args:
        true_variance: Variance of the normalized quadrature (1 for a coherent state)
        n_a: Atom number N_a
        probe: Probe pulse parameters
        technical: Technical noise; none by default
        n: Number of cycles
        seed: Seed of the generator
        first_cycle: Cycle id of the first record

    Returns:
        Records in cycle order

    Raises:
        InvalidArgumentError: Non-positive variance or count, or a variance the
            probe cannot reach at this atom number
    """
    technical = technical or TechnicalNoise()
    if n < 1:
        raise InvalidArgumentError(f"record count must be >= 1, got {n}")
    if not true_variance > 0:
        raise InvalidArgumentError(f"true_variance must be positive, got {true_variance}")
    if n_a < 0:
        raise InvalidArgumentError(f"n_a must be >= 0, got {n_a}")

    rng = np.random.default_rng(np.random.SeedSequence([seed, n_a]))
    delta_n = rng.standard_normal(n) * math.sqrt(n_a)
    shot1 = rng.standard_normal(n) * math.sqrt(probe.a0)
    shot2 = rng.standard_normal(n) * math.sqrt(probe.second_shot_noise)
    shared = rng.standard_normal(n) * math.sqrt(technical.a2) * n_a
    drift = np.cumsum(rng.standard_normal(n) * technical.drift_std)
    residual = rng.standard_normal(n) * math.sqrt(
        residual_variance(true_variance, probe, technical, n_a)
    )

    common = probe.kappa * delta_n + shared + drift
    phi1 = shot1 + common
    phi2 = shot2 + math.sqrt(probe.eta) * common + residual
    LOGGER.debug(
        "Simulated %d records at N_a=%d (V=%g, zeta*=%.4f)",
        n, n_a, true_variance, optimal_zeta(probe, technical, n_a),
    )
    return [
        RawRecord(cycle_id=first_cycle + index, n_atoms=int(n_a), phi1=float(a), phi2=float(b))
        for index, (a, b) in enumerate(zip(phi1, phi2, strict=True))
    ]


def simulate_acs_sweep(
    probe: ProbeParameters,
    technical: TechnicalNoise | None = None,
    atom_numbers: tuple[int, ...] = DEFAULT_SWEEP,
    n_per_group: int = 1000,
    seed: int = 0,
    true_variance: float = 1.0,
) -> list[RawRecord]:
    """Simulate a calibration run: consecutive record blocks over an atom-number sweep.

    Cycle ids run on across groups, and a random-walk drift restarts in each group.
    """
    if not atom_numbers:
        raise InvalidArgumentError("atom-number sweep is empty")
    records: list[RawRecord] = []
    for n_a in atom_numbers:
        records.extend(
            simulate_records(
                true_variance,
                int(n_a),
                probe,
                technical,
                n=n_per_group,
                seed=seed,
                first_cycle=len(records),
            )
        )
    LOGGER.info("Simulated %d records over %d atom numbers", len(records), len(atom_numbers))
    return records
