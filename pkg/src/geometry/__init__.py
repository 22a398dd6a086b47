"""
Geometry: metric contractions, sphere quadrature and angular calculus.
"""

from .metric_ops import evaluate_G, evaluate_G_nodes, null_condition_satisfied, rotate_g0
from .quadrature import (
    SphereRule,
    exact_moment,
    gauss_legendre,
    sphere_rule,
    spherical_mean_reduction,
)
from .angular import AngularPolynomial, angular_derivative, rotation_derivative

__all__ = [
    "evaluate_G",
    "evaluate_G_nodes",
    "null_condition_satisfied",
    "rotate_g0",
    "SphereRule",
    "exact_moment",
    "gauss_legendre",
    "sphere_rule",
    "spherical_mean_reduction",
    "AngularPolynomial",
    "angular_derivative",
    "rotation_derivative",
]
