"""Named parameter bundles for one-command reproductions."""

from __future__ import annotations

from dataclasses import dataclass, field

from aqqp.core.errors import InvalidArgumentError
from aqqp.states.models import StateKind, StateModel, variance_from_db
from aqqp.states.records import DEFAULT_SWEEP, TechnicalNoise

# Detection efficiency the simulated probe reaches at REFERENCE_ATOMS.
REFERENCE_EFFICIENCY = 0.83
REFERENCE_ATOMS = 290_000
SQUEEZED_SAMPLES = 4841
# Technical noise at about 5% of the projection noise at REFERENCE_ATOMS.
DEFAULT_TECHNICAL = TechnicalNoise(a2=7e-20)


@dataclass(frozen=True)
class Preset:
    """Parameters of a reproducible run.

    Attributes:
        name: Preset name used on the command line.
        description: One-line summary.
        state: State sampled by ``estimate``/``scan`` when no input file is given.
        n_samples: Number of samples (or analysis records).
        width: Default filter width.
        atom_numbers: Atom numbers of simulated records.
        records_per_group: Records simulated per atom number.
        record_variance: Normalized variance of simulated records; the state's
            variance if None.
        technical: Technical noise of simulated records.
    """

    name: str
    description: str
    state: StateModel
    n_samples: int = SQUEEZED_SAMPLES
    width: float = 1.1
    atom_numbers: tuple[int, ...] = (REFERENCE_ATOMS,)
    records_per_group: int = SQUEEZED_SAMPLES
    record_variance: float | None = None
    technical: TechnicalNoise = field(default=DEFAULT_TECHNICAL)

    @property
    def simulated_variance(self) -> float:
        """Normalized variance of the records ``simulate`` writes."""
        if self.record_variance is not None:
            return self.record_variance
        if self.state.kind is not StateKind.GAUSSIAN:
            raise InvalidArgumentError(
                f"preset {self.name!r} has no Gaussian record model; sample it directly"
            )
        return self.state.variance


_SQUEEZED = StateModel.gaussian(round(variance_from_db(1.67), 3))

_PRESETS: dict[str, Preset] = {}


def register_preset(preset: Preset) -> None:
    """Register a preset under its name."""
    _PRESETS[preset.name] = preset


def get_preset(name: str) -> Preset:
    """Return the preset called ``name``."""
    if name not in _PRESETS:
        available = ", ".join(sorted(_PRESETS))
        raise InvalidArgumentError(f"unknown preset {name!r}; available: {available}")
    return _PRESETS[name]


def list_presets() -> list[str]:
    """List registered preset names."""
    return sorted(_PRESETS)


register_preset(
    Preset(
        name="experiment",
        description="calibration sweep 0 <= N_a <= 2.9e5 and squeezed analysis at w=1.1",
        state=_SQUEEZED,
        atom_numbers=DEFAULT_SWEEP,
        records_per_group=2000,
        record_variance=1.0,
        technical=TechnicalNoise(a2=7e-20, drift_std=1e-6),
    )
)
register_preset(
    Preset(name="squeezed", description="1.67 dB squeezed state, N=4841, w=1.1", state=_SQUEEZED)
)
register_preset(
    Preset(name="vacuum", description="ground state", state=StateModel.gaussian(1.0), width=1.0)
)
register_preset(
    Preset(
        name="thermal",
        description="thermal state with variance 1.5",
        state=StateModel.gaussian(1.5),
        width=1.0,
    )
)
register_preset(
    Preset(
        name="single-excitation",
        description="single excitation at unit efficiency, w=2",
        state=StateModel.single_excitation(1.0),
        width=2.0,
    )
)
