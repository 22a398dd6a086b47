"""
Exact d'Alembert oracle for the flat radial wave equation.

For c = 1, v = r u solves v_tt = v_rr, so with the odd extensions v0, v1 of
r u0 and r u1

    v(t, r) = 1/2 [v0(r - t) + v0(r + t)] + 1/2 int_{r-t}^{r+t} v1.
"""

import logging

import numpy as np
from scipy.integrate import quad

from ..errors import InputDomainError
from ..models.initial_data import InitialData

logger = logging.getLogger(__name__)


def _v1_integral(data: InitialData, a: float, b: float) -> float:
    lo, hi = max(a, -data.R), min(b, data.R)
    if hi <= lo or data.is_zero:
        return 0.0
    value, _ = quad(data.v1, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=200)
    return value


def dalembert_linear(data: InitialData, epsilon: float, t: float, r: float) -> float:
    """
    Exact u(t, r) of the flat problem with data (eps u0, eps u1).

    Args:
        data: Initial data
        epsilon: Amplitude
        t: Time
        r: Radius, r = 0 gives the limit v_r(t, 0)

    Returns:
        float: u(t, r)
    """
    if r < 0.0:
        raise InputDomainError(f"radius must be >= 0, got {r}")
    if r == 0.0:
        return epsilon * (data.v0_prime(t) + data.v1(t))
    v = 0.5 * (data.v0(r - t) + data.v0(r + t)) + 0.5 * _v1_integral(data, r - t, r + t)
    return epsilon * v / r


def dalembert_v(data: InitialData, epsilon: float, t: float, r: np.ndarray) -> np.ndarray:
    """Exact v = r u on an array of radii at one time."""
    r = np.asarray(r, dtype=float)
    v = 0.5 * (data.v0(r - t) + data.v0(r + t))
    if data.u1.amplitude != 0.0 and data.u1.family != "zero":
        v = v + 0.5 * np.array([_v1_integral(data, ri - t, ri + t) for ri in r])
    return epsilon * v


def exact_linear_radiation_field(data: InitialData, q):
    """
    Flat-space scattering data per unit amplitude: 1/2 (v0'(q) - v1(q)).

    Args:
        data: Initial data
        q: Retarded time(s)

    Returns:
        Ahat_lin at q
    """
    out = 0.5 * (np.asarray(data.v0_prime(q)) - np.asarray(data.v1(q)))
    return float(out) if np.ndim(out) == 0 else out
