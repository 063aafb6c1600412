"""Figure rendering for the estimator toolkit's CSV artifacts."""

from .render import (
    MissingColumnError,
    convergence,
    density_panels,
    density_profile,
    diverging_levels,
    energy_cross_check,
    escape,
    phase_plane,
)

__version__ = "1.0.0"

__all__ = [
    "MissingColumnError",
    "convergence",
    "density_panels",
    "density_profile",
    "diverging_levels",
    "energy_cross_check",
    "escape",
    "phase_plane",
]
