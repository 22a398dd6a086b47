"""
Radial wave solver, the flat-space oracle and the grid-refinement study.
"""

from .field import RadialField, evaluate
from .solver import leapfrog_step, simulate_radial
from .oracle import dalembert_linear, dalembert_v, exact_linear_radiation_field
from .convergence import ConvergenceRow, convergence_frame, convergence_table, second_order

__all__ = [
    "RadialField",
    "evaluate",
    "leapfrog_step",
    "simulate_radial",
    "dalembert_linear",
    "dalembert_v",
    "exact_linear_radiation_field",
    "ConvergenceRow",
    "convergence_frame",
    "convergence_table",
    "second_order",
]
