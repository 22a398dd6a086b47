"""
Backward representation of a solution of box phi = F inside the light cone.

    phi(t, x) = 1/(4 pi) [ int_{S^2} phi(T, y) - (T - t)(phi_t + theta.grad phi)(T, y) dS
                           - int_0^{T-t} int_{S^2} F(t + rho, x + rho eta) rho dS d rho ]

with y = x - (T - t) theta. The first bracket is the linear part, the second
the inhomogeneous part.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import InputDomainError
from ..geometry.quadrature import SphereRule, gauss_legendre
from .samplers import SpacetimeSampler

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class PhiFormComparison:
    """Measured gap between the linear part and the Phi form, with |x| sup|d phi(T)|."""
    difference: float
    bound: float


def _check(t: float, x: Sequence[float], T: float) -> np.ndarray:
    x_arr = np.asarray(x, dtype=float)
    if x_arr.shape != (3,):
        raise InputDomainError(f"x must be a 3-vector, got shape {x_arr.shape}")
    if not T > t:
        raise InputDomainError(f"final time T = {T} must exceed t = {t}")
    return x_arr


def _final_points(x: np.ndarray, t: float, T: float, sphere: SphereRule) -> np.ndarray:
    return x[None, :] - (T - t) * sphere.nodes


def linear_part(s: SpacetimeSampler, t: float, x: Sequence[float], T: float, sphere: SphereRule) -> float:
    """
    Sphere integral of the Cauchy data of phi at time T.

    Args:
        s: Sampler
        t: Time of the evaluation point
        x: Evaluation point
        T: Final time, T > t
        sphere: Sphere rule

    Returns:
        float: Linear part of the representation

    Raises:
        QuadratureDomainError: If a node falls outside the sampler's domain
    """
    x = _check(t, x, T)
    y = _final_points(x, t, T, sphere)
    phi = s.value(T, y)
    phi_t, grad = s.gradient(T, y)
    radial = np.einsum("ni,ni->n", sphere.nodes, grad)
    return sphere.integrate(phi - (T - t) * (phi_t + radial)) / FOUR_PI


def inhomogeneous_part(
    s: SpacetimeSampler,
    t: float,
    x: Sequence[float],
    T: float,
    sphere: SphereRule,
    radial_nodes: int,
) -> float:
    """
    Source contribution over the backward cone in polar coordinates.

    The 1/|y| kernel cancels against the rho^2 Jacobian, leaving a smooth
    integrand in rho integrated by Gauss-Legendre.

    Args:
        radial_nodes: Gauss-Legendre nodes in rho

    Returns:
        float: Inhomogeneous part (0 when the sampler has no source)
    """
    x = _check(t, x, T)
    if radial_nodes < 1:
        raise InputDomainError(f"radial_nodes must be >= 1, got {radial_nodes}")
    if s.F is None:
        return 0.0
    rho, w_rho = gauss_legendre(radial_nodes, 0.0, T - t)
    points = x[None, None, :] + rho[:, None, None] * sphere.nodes[None, :, :]
    times = np.repeat(t + rho, len(sphere))
    values = s.source(times, points.reshape(-1, 3)).reshape(len(rho), len(sphere))
    shells = (values * sphere.weights[None, :]).sum(axis=1)
    return -float(np.sum(w_rho * rho * shells)) / FOUR_PI


def backward_representation(
    s: SpacetimeSampler,
    t: float,
    x: Sequence[float],
    T: float,
    sphere: SphereRule,
    radial_nodes: int,
) -> float:
    """
    Reconstruct phi(t, x) from its data at time T and its source.

    Returns:
        float: linear_part + inhomogeneous_part
    """
    return linear_part(s, t, x, T, sphere) + inhomogeneous_part(s, t, x, T, sphere, radial_nodes)


def phi_form_difference(
    s: SpacetimeSampler, t: float, x: Sequence[float], T: float, sphere: SphereRule
) -> PhiFormComparison:
    """
    Compare the linear part with the sphere mean of Phi = (-d_t + d_r)(|y| phi) at time T.

    Returns:
        PhiFormComparison: |difference| and |x| sup|d phi(T)| over the nodes
    """
    x_arr = _check(t, x, T)
    y = _final_points(x_arr, t, T, sphere)
    norm_y = np.linalg.norm(y, axis=1)
    phi = s.value(T, y)
    phi_t, grad = s.gradient(T, y)
    safe = np.where(norm_y > 0.0, norm_y, 1.0)
    d_r = np.einsum("ni,ni->n", y, grad) / safe
    big_phi = -norm_y * phi_t + phi + norm_y * d_r
    difference = abs(linear_part(s, t, x_arr, T, sphere) - sphere.integrate(big_phi) / FOUR_PI)
    sup_grad = float(np.max(np.sqrt(phi_t ** 2 + np.sum(grad ** 2, axis=1))))
    return PhiFormComparison(difference=difference, bound=float(np.linalg.norm(x_arr)) * sup_grad)
