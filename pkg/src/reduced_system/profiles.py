"""
Closed-form solutions of the geometric reduced system

    d_s(mu U_q) = 0,    d_s mu = 1/4 G mu^2 U_q,

their normalized profiles (mu_hat, U_q_hat, U_hat) and residual checks.
"""

import logging
import math
from typing import Dict, Tuple

import numpy as np

from ..errors import InputDomainError
from .grid import GridFunction1D

logger = logging.getLogger(__name__)


def _check_slow_time(s: float) -> None:
    if s < 0.0:
        raise InputDomainError(f"slow time s must be >= 0, got {s}")


def reduced_solution(a1: float, a2: float, G: float, s: float) -> Tuple[float, float]:
    """
    Explicit solution with (mu, U_q)|_{s=0} = (a1, a2).

    Args:
        a1: Initial mu
        a2: Initial U_q
        G: Value of G(omega)
        s: Slow time, s >= 0

    Returns:
        Tuple[float, float]: (mu, U_q) at s
    """
    _check_slow_time(s)
    rate = 0.25 * G * a1 * a2 * s
    return a1 * math.exp(rate), a2 * math.exp(-rate)


def normalized_profiles(sd, G_value: float, s: float) -> Tuple[GridFunction1D, GridFunction1D]:
    """
    mu_hat = -2 exp(-1/2 G Ahat s) and U_q_hat = Ahat exp(1/2 G Ahat s) on the Ahat grid.

    Args:
        sd: ScatteringData
        G_value: G(omega)
        s: Slow time

    Returns:
        Tuple[GridFunction1D, GridFunction1D]: (mu_hat, uq_hat)
    """
    _check_slow_time(s)
    a_hat = sd.a_hat
    exponent = 0.5 * G_value * a_hat.values * s
    mu_hat = GridFunction1D(a_hat.q_grid, -2.0 * np.exp(-exponent), tail_exponent=0.0)
    uq_hat = a_hat.with_values(a_hat.values * np.exp(exponent))
    return mu_hat, uq_hat


def u_hat_integrand(sd, G_value: float, s: float, k: int = 0) -> GridFunction1D:
    """Ahat (1/2 G Ahat)^k exp(1/2 G Ahat s) tabulated on the Ahat grid."""
    a_hat = sd.a_hat
    half_g = 0.5 * G_value * a_hat.values
    values = a_hat.values * half_g ** k * np.exp(half_g * s)
    tail = a_hat.tail_exponent
    if tail is not None and not math.isinf(tail):
        tail = tail * (k + 1)
    return a_hat.with_values(values, tail)


def u_hat_profile(sd, G_value: float, s: float, q: float) -> float:
    """
    U_hat(s, q) = -int_q^R Ahat(p) exp(1/2 G Ahat(p) s) dp.

    Args:
        sd: ScatteringData
        G_value: G(omega)
        s: Slow time
        q: Lower integration limit

    Returns:
        float: U_hat(s, q)

    Raises:
        ExtrapolationError: If q is below the grid and Ahat has no tail model
    """
    _check_slow_time(s)
    if q >= sd.R:
        return 0.0
    return -u_hat_integrand(sd, G_value, s).integrate(q, sd.R)


def reduced_residual(
    mu: np.ndarray, uq: np.ndarray, s_grid: np.ndarray, G: float
) -> Tuple[float, float]:
    """
    Max-norm central-difference residuals of the reduced system.

    Args:
        mu: Array of shape (n_s, n_q)
        uq: Array of shape (n_s, n_q)
        s_grid: Uniform slow-time levels, at least three
        G: Value of G(omega)

    Returns:
        Tuple[float, float]: (|d_s(mu U_q)|, |d_s mu - 1/4 G mu^2 U_q|) in max norm
    """
    mu = np.atleast_2d(np.asarray(mu, dtype=float))
    uq = np.atleast_2d(np.asarray(uq, dtype=float))
    s_grid = np.asarray(s_grid, dtype=float)
    if mu.shape != uq.shape or mu.shape[0] != len(s_grid):
        raise InputDomainError("mu, uq must be (n_s, n_q) arrays matching s_grid")
    if len(s_grid) < 3:
        raise InputDomainError("reduced_residual needs at least three s levels")
    ds = np.diff(s_grid)
    two_ds = (s_grid[2:] - s_grid[:-2])[:, None]
    product = mu * uq
    res1 = (product[2:] - product[:-2]) / two_ds
    res2 = (mu[2:] - mu[:-2]) / two_ds - 0.25 * G * mu[1:-1] ** 2 * uq[1:-1]
    if np.ptp(ds) > 1e-12 * np.max(ds):
        logger.warning("reduced_residual called on a non-uniform s grid")
    return float(np.max(np.abs(res1))), float(np.max(np.abs(res2)))


def profile_bounds(sd, G_value: float, s: float) -> Dict[str, float]:
    """
    Sup norms of the normalized profiles at slow time s.

    Returns:
        Dict[str, float]: sup|mu_hat + 2|, sup|U_hat|, sup|d_q U_hat| over the grid
    """
    mu_hat, uq_hat = normalized_profiles(sd, G_value, s)
    integrand = u_hat_integrand(sd, G_value, s)
    anti = integrand.antiderivative_at_nodes()
    total = integrand.integrate(integrand.q_min, sd.R)
    u_hat = -(total - anti)
    return {
        "mu_hat_deviation": float(np.max(np.abs(mu_hat.values + 2.0))),
        "u_hat_sup": float(np.max(np.abs(u_hat))),
        "uq_hat_sup": float(np.max(np.abs(uq_hat.values))),
    }
