"""
Gauge map F(q) = 2R - int_{2R}^q 2/A1(p) dp and the scattering data Ahat = A(F^{-1}).

Below and above the A1 grid, A1 is extended by its end values, so F is
affine outside the grid. F' = -2/A1 lies in [2/3, 2] when A1 is in [-3, -1].
"""

import logging
from typing import Union

import numpy as np
from scipy.optimize import brentq

from ..errors import GaugeDegeneracyError
from .fitting import fit_tail_exponent
from .grid import GridFunction1D

logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-12
NEWTON_MAX_ITERATIONS = 50
DEGENERACY_MARGIN = 1e-12


class GaugeMap:
    """
    Monotone map F built from A1 and its inverse.

    Args:
        a1: Tabulated A1
        R: Data support radius

    Raises:
        GaugeDegeneracyError: If A1 reaches zero or becomes positive
    """

    def __init__(self, a1: GridFunction1D, R: float):
        if np.any(a1.values >= -DEGENERACY_MARGIN):
            bad = a1.q_grid[a1.values >= -DEGENERACY_MARGIN]
            raise GaugeDegeneracyError(
                f"A1 is not negative on the gauge integration range (first bad q = {bad[0]!r})"
            )
        self.R = float(R)
        self.q_grid = a1.q_grid
        self._rate = GridFunction1D(a1.q_grid, -2.0 / a1.values, tail_exponent=0.0)
        self._anti = self._rate._spline.antiderivative()
        self._rate_low = float(self._rate.values[0])
        self._rate_high = float(self._rate.values[-1])
        self._rate_min = float(np.min(self._rate.values))
        self._rate_max = float(np.max(self._rate.values))
        # F at the top grid node: 2R + int_{2R}^{q_max} h, with h constant above the grid
        self._f_top = 2.0 * self.R + self._rate_high * (self.q_grid[-1] - 2.0 * self.R)

    def rate(self, q) -> np.ndarray:
        """F'(q) = -2/A1(q)."""
        return np.asarray(self._rate(q), dtype=float)

    def __call__(self, q):
        q_arr = np.atleast_1d(np.asarray(q, dtype=float))
        q_lo, q_hi = self.q_grid[0], self.q_grid[-1]
        clipped = np.clip(q_arr, q_lo, q_hi)
        inner = self._f_top + (self._anti(clipped) - self._anti(q_hi))
        out = inner + self._rate_low * np.minimum(q_arr - q_lo, 0.0) + self._rate_high * np.maximum(q_arr - q_hi, 0.0)
        return float(out[0]) if np.ndim(q) == 0 else out

    def inverse(self, rho):
        """
        Solve F(q) = rho by Newton iteration with a bracketing fallback.

        Args:
            rho: Target value(s)

        Returns:
            Preimage(s) q
        """
        rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
        q = rho_arr.copy()
        converged = np.zeros(q.shape, dtype=bool)
        for _ in range(NEWTON_MAX_ITERATIONS):
            residual = self(q) - rho_arr
            converged = np.abs(residual) <= NEWTON_TOLERANCE * np.maximum(1.0, np.abs(rho_arr))
            if np.all(converged):
                break
            q = np.where(converged, q, q - residual / self.rate(q))
        if not np.all(converged):
            for k in np.flatnonzero(~converged):
                q[k] = self._bracketed_inverse(float(rho_arr[k]))
            logger.debug(f"Bracketing fallback used for {np.count_nonzero(~converged)} gauge inversions")
        return float(q[0]) if np.ndim(rho) == 0 else q

    def _bracketed_inverse(self, rho: float) -> float:
        guess = rho
        gap = abs(self(guess) - rho) / self._rate_min + 1.0
        return brentq(lambda p: self(p) - rho, guess - gap, guess + gap, xtol=NEWTON_TOLERANCE, maxiter=200)


def gauge_map(a1: GridFunction1D, R: float, q: Union[float, np.ndarray]):
    """
    Evaluate F(q) = 2R - int_{2R}^q 2/A1(p) dp.

    Args:
        a1: Tabulated A1
        R: Data support radius
        q: Point(s)

    Returns:
        F(q)
    """
    return GaugeMap(a1, R)(q)


def gauge_map_inverse(a1: GridFunction1D, R: float, rho: Union[float, np.ndarray]):
    """Solve F(q) = rho for q."""
    return GaugeMap(a1, R).inverse(rho)


def scattering_from_limits(a_raw: GridFunction1D, a1: GridFunction1D, R: float) -> GridFunction1D:
    """
    Tabulate Ahat(q) = A(F^{-1}(q)) on the grid of A.

    Args:
        a_raw: Limit profile A with its tail model
        a1: Limit profile A1
        R: Data support radius

    Returns:
        GridFunction1D: Ahat, zero for q >= R

    Raises:
        GaugeDegeneracyError: If A1 is not negative
    """
    q = a_raw.q_grid
    if np.all(a1.values == -2.0):
        values = np.array(a_raw.values, copy=True)
    else:
        preimage = GaugeMap(a1, R).inverse(q)
        values = np.asarray(a_raw(preimage), dtype=float)
    values = np.where(q >= R, 0.0, values)
    tail = fit_tail_exponent(q, values)
    if a_raw.tail_exponent is not None and np.isinf(a_raw.tail_exponent):
        tail = a_raw.tail_exponent
    return GridFunction1D(q, values, tail_exponent=tail, support_radius=R)
