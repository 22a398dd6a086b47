"""
Interior asymptotics: u(t, x) ~ -(eps / 4 pi) int_{S^2} A(x.theta - t, theta) dS_theta.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..errors import InputDomainError
from ..geometry.quadrature import SphereRule, spherical_mean_reduction
from ..reduced_system.recursion import TermList

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * math.pi


def _coverage_warning(terms: TermList, q_low: float) -> None:
    grid_start = min(profile.q_min for profile, _ in terms.terms)
    if q_low < grid_start:
        logger.warning(
            f"interior prediction needs q down to {q_low:.4g}, profiles start at {grid_start:.4g}; "
            f"using the tail model"
        )


def interior_prediction(
    terms: TermList,
    epsilon: float,
    t: float,
    x: Sequence[float],
    sphere: Optional[SphereRule] = None,
    radial_path: bool = True,
) -> float:
    """
    Evaluate the interior formula for a TermList at (t, x).

    Radial TermLists go through the one-dimensional reduction of the sphere
    integral unless radial_path is False; all others use the sphere rule.

    Args:
        terms: Profiles A_I with angular factors
        epsilon: Data amplitude
        t: Time
        x: Point with |x| < t
        sphere: Sphere rule (required for the quadrature path)
        radial_path: Use the reduction for radial TermLists

    Returns:
        float: Predicted Z^I u(t, x)

    Raises:
        InputDomainError: If |x| >= t or no sphere rule is given when needed
        ExtrapolationError: If the q range is not covered and no tail model exists
    """
    x_arr = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x_arr))
    if not r < t:
        raise InputDomainError(f"interior point needs |x| < t, got |x| = {r}, t = {t}")
    if terms.is_empty:
        return 0.0
    _coverage_warning(terms, -t - r)

    if terms.is_radial and radial_path:
        profile = terms.radial_profile()
        if r == 0.0:
            integral = FOUR_PI * float(profile(-t))
        else:
            integral = spherical_mean_reduction(profile, t, r)
    else:
        if sphere is None:
            raise InputDomainError("a sphere rule is required for angular TermLists")
        q = sphere.nodes @ x_arr - t
        integral = sphere.integrate(terms.evaluate(q, sphere.nodes))
    return -epsilon * integral / FOUR_PI
