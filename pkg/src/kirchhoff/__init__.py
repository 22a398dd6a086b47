"""
Backward representation formula for box phi = F and its large-T geometry.
"""

from .samplers import (
    CATALOG,
    SpacetimeSampler,
    affine,
    catalog_sampler,
    cubic,
    growing,
    plane_wave,
    quadratic,
)
from .representation import (
    PhiFormComparison,
    backward_representation,
    inhomogeneous_part,
    linear_part,
    phi_form_difference,
)
from .limits import LimitGeometry, limit_geometry, remainder_budget, remainder_integral

__all__ = [
    "CATALOG",
    "SpacetimeSampler",
    "affine",
    "catalog_sampler",
    "cubic",
    "growing",
    "plane_wave",
    "quadratic",
    "PhiFormComparison",
    "backward_representation",
    "inhomogeneous_part",
    "linear_part",
    "phi_form_difference",
    "LimitGeometry",
    "limit_geometry",
    "remainder_budget",
    "remainder_integral",
]
