"""
Interior asymptotics checks, spherical-means decay and vanishing criteria.
"""

from .prediction import interior_prediction
from .verification import axis_residuals, verify_interior
from .decay import dyadic_times, spherical_means_decay
from .vanishing import assumption_scan, classify_vanishing

__all__ = [
    "interior_prediction",
    "axis_residuals",
    "verify_interior",
    "dyadic_times",
    "spherical_means_decay",
    "assumption_scan",
    "classify_vanishing",
]
