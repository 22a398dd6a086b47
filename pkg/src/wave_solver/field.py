"""
RadialField: the simulated v = r u on a uniform (t, r) grid.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import RectBivariateSpline

from ..errors import FieldRangeError, InputDomainError
from ..models.metric import MetricModel

logger = logging.getLogger(__name__)

QUANTITIES = ("u", "u_t", "u_r", "trz", "v")
_ORIGIN_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class RadialField:
    """
    Stored time levels of v = r u with sampling by bicubic splines.

    Attributes:
        t_grid: Stored times (uniform)
        r_grid: Radial nodes (uniform, starting at 0)
        v: Array (len(t_grid), len(r_grid)), t-major
        dt: Spacing of the stored time levels
        dr: Radial spacing
        epsilon: Data amplitude
        R: Data support radius
        metric: Metric the field was simulated with
        cfl_max: Largest lambda * sqrt(c) met during the run
        step_dt: Leapfrog step (dt / stride)
    """

    t_grid: np.ndarray
    r_grid: np.ndarray
    v: np.ndarray
    dt: float
    dr: float
    epsilon: float
    R: float
    metric: MetricModel
    cfl_max: float = 0.0
    step_dt: Optional[float] = None
    _spline: Optional[RectBivariateSpline] = field(default=None, init=False, repr=False)

    @property
    def t_max(self) -> float:
        return float(self.t_grid[-1])

    @property
    def r_max(self) -> float:
        return float(self.r_grid[-1])

    @property
    def spline(self) -> RectBivariateSpline:
        if self._spline is None:
            logger.debug(f"Building bicubic sampler on {self.v.shape} field")
            object.__setattr__(
                self, "_spline", RectBivariateSpline(self.t_grid, self.r_grid, self.v, kx=3, ky=3, s=0)
            )
        return self._spline

    def contains(self, t, r) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        r = np.asarray(r, dtype=float)
        tol = 1e-12 * max(1.0, self.t_max, self.r_max)
        return (
            (t >= self.t_grid[0] - tol) & (t <= self.t_max + tol)
            & (r >= -tol) & (r <= self.r_max + tol)
        )

    def _check(self, t, r) -> None:
        if not np.all(self.contains(t, r)):
            raise FieldRangeError(
                f"query outside field grid t in [{self.t_grid[0]}, {self.t_max}], r in [0, {self.r_max}]"
            )

    def sample(self, t, r, what: str = "u"):
        """
        Vectorized evaluation of u, u_t, u_r, trz = (d_t - d_r)(r u) or v.

        Args:
            t: Time(s)
            r: Radius(es), broadcast against t
            what: Quantity name

        Returns:
            Value(s) with the broadcast shape of t and r

        Raises:
            InputDomainError: If the quantity is unknown
            FieldRangeError: If any point is outside the grid
        """
        if what not in QUANTITIES:
            raise InputDomainError(f"unknown quantity {what!r}, expected one of {QUANTITIES}")
        t_arr, r_arr = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
        self._check(t_arr, r_arr)
        tt = np.clip(t_arr.ravel(), self.t_grid[0], self.t_max)
        rr = np.clip(r_arr.ravel(), 0.0, self.r_max)
        ev = self.spline.ev
        if what == "v":
            out = ev(tt, rr)
        elif what == "trz":
            out = ev(tt, rr, dx=1) - ev(tt, rr, dy=1)
        else:
            origin = rr < _ORIGIN_TOLERANCE
            safe_r = np.where(origin, 1.0, rr)
            if what == "u":
                out = np.where(origin, ev(tt, rr, dy=1), ev(tt, rr) / safe_r)
            elif what == "u_t":
                out = np.where(origin, ev(tt, rr, dx=1, dy=1), ev(tt, rr, dx=1) / safe_r)
            else:
                interior = ev(tt, rr, dy=1) / safe_r - ev(tt, rr) / safe_r ** 2
                out = np.where(origin, 0.5 * ev(tt, rr, dy=2), interior)
        out = out.reshape(t_arr.shape)
        return float(out) if out.ndim == 0 else out


def evaluate(field: RadialField, t: float, r: float, what: str = "u") -> float:
    """
    Sample one quantity of the field at (t, r).

    Args:
        field: Simulated field
        t: Time
        r: Radius
        what: One of u, u_t, u_r, trz

    Returns:
        float: Interpolated value; at r = 0, u is the limit v_r(t, 0)
    """
    return field.sample(t, r, what)
