"""
Reduced system: closed-form profiles, gauge map, scattering data and the
A_I / U_I recursions.
"""

from .grid import GridFunction1D, japanese_bracket
from .fitting import fit_loglog_slope, fit_tail_exponent
from .profiles import (
    normalized_profiles,
    profile_bounds,
    reduced_residual,
    reduced_solution,
    u_hat_profile,
)
from .gauge import GaugeMap, gauge_map, gauge_map_inverse, scattering_from_limits
from .scattering import ScatteringData
from .recursion import (
    Letter,
    MultiIndexWord,
    TermList,
    compatibility_residual,
    derive_AI,
    derive_UI,
)

__all__ = [
    "GridFunction1D",
    "japanese_bracket",
    "fit_loglog_slope",
    "fit_tail_exponent",
    "normalized_profiles",
    "profile_bounds",
    "reduced_residual",
    "reduced_solution",
    "u_hat_profile",
    "GaugeMap",
    "gauge_map",
    "gauge_map_inverse",
    "scattering_from_limits",
    "ScatteringData",
    "Letter",
    "MultiIndexWord",
    "TermList",
    "compatibility_residual",
    "derive_AI",
    "derive_UI",
]
