"""
Geometry of the backward cone for large T and the remainder budget of the
representation formula.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import InputDomainError
from ..reduced_system.grid import japanese_bracket


@dataclass(frozen=True)
class LimitGeometry:
    norm_y: float
    T_minus_norm_y: float
    direction_error: float


def limit_geometry(t: float, x: Sequence[float], T: float, theta: Sequence[float]) -> LimitGeometry:
    """
    For y = x - (T - t) theta, report |y|, T - |y| and |y/|y| + theta|.

    As T grows T - |y| tends to t + x.theta and y/|y| to -theta.

    Raises:
        InputDomainError: If theta is not a unit vector or T <= t
    """
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if abs(float(np.linalg.norm(theta)) - 1.0) > 1e-10:
        raise InputDomainError(f"theta must be a unit vector, |theta| = {float(np.linalg.norm(theta))}")
    if not T > t:
        raise InputDomainError(f"T = {T} must exceed t = {t}")
    y = x - (T - t) * theta
    norm_y = float(np.linalg.norm(y))
    return LimitGeometry(
        norm_y=norm_y,
        T_minus_norm_y=T - norm_y,
        direction_error=float(np.linalg.norm(y / norm_y + theta)),
    )


def remainder_integral(t: float, T: float, gamma1: float) -> float:
    """
    Closed form of int_{t^2}^{(T-t)^2} (1 + rho)^{-gamma1/2} d rho.
    """
    lo, hi = japanese_bracket(t), japanese_bracket(T - t)
    if gamma1 == 2.0:
        return 2.0 * math.log(hi / lo)
    exponent = 2.0 - gamma1
    return float((hi ** exponent - lo ** exponent) / (1.0 - 0.5 * gamma1))


def remainder_budget(
    t: float,
    x: Sequence[float],
    T: float,
    M: float,
    gamma1: float,
    gamma2: float,
    sup_grad_T: float,
) -> float:
    """
    Explicit bound on phi minus its Phi-form approximation, constant 1.

        |x| sup|d phi(T)| + M <t - |x|>^{-gamma2} (<t>^{2 - gamma1} + int_{t^2}^{(T-t)^2} (1 + rho)^{-gamma1/2})

    Args:
        t: Time
        x: Point with |x| < t
        T: Final time, T > 2t
        M: Source amplitude in |F| <= M <t>^{-gamma1} <|x| - t>^{-gamma2}
        gamma1: Time decay of the source
        gamma2: Decay of the source away from the cone
        sup_grad_T: sup of |d phi| at time T

    Returns:
        float: Value of the bound

    Raises:
        InputDomainError: If exponents are not positive or T <= 2t
    """
    if gamma1 <= 0.0 or gamma2 <= 0.0:
        raise InputDomainError(f"decay exponents must be positive, got {gamma1}, {gamma2}")
    if not T > 2.0 * t:
        raise InputDomainError(f"T = {T} must exceed 2t = {2.0 * t}")
    r = float(np.linalg.norm(np.asarray(x, dtype=float)))
    if M == 0.0:
        return r * sup_grad_T
    source = M * japanese_bracket(t - r) ** (-gamma2) * (
        japanese_bracket(t) ** (2.0 - gamma1) + remainder_integral(t, T, gamma1)
    )
    return r * sup_grad_T + float(source)
