"""
Grid-tabulated radial profiles with cubic interpolation and tail models.

A GridFunction1D holds values on a strictly increasing q grid. Between
nodes it is a cubic spline; at or above the support radius it vanishes;
above the grid without a support radius it is held constant; below the
grid it follows value(q_min) * (<q>/<q_min>)^tail_exponent, where a tail
exponent of -inf means the profile vanishes below the grid and None means
no extrapolation is allowed.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from ..errors import ExtrapolationError, InputDomainError

logger = logging.getLogger(__name__)

_SAME_TAIL = object()


def japanese_bracket(q):
    """<q> = sqrt(1 + q^2)."""
    return np.sqrt(1.0 + np.square(q))


def _shift_tail(tail: Optional[float], shift: float) -> Optional[float]:
    if tail is None:
        return None
    if math.isinf(tail):
        return tail
    return tail + shift


@dataclass(frozen=True, eq=False)
class GridFunction1D:
    """
    Radial profile on a q grid.

    Attributes:
        q_grid: Strictly increasing nodes
        values: Values at the nodes
        tail_exponent: Power-law exponent used below the grid (None forbids extrapolation)
        support_radius: Profile is zero for q >= support_radius (None for no cutoff)
    """

    q_grid: np.ndarray
    values: np.ndarray
    tail_exponent: Optional[float] = None
    support_radius: Optional[float] = None
    _spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q = np.asarray(self.q_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if q.ndim != 1 or v.shape != q.shape:
            raise InputDomainError(
                f"q_grid and values must be 1-D of equal length, got {q.shape} and {v.shape}"
            )
        if len(q) < 2:
            raise InputDomainError("a grid function needs at least two nodes")
        if np.any(np.diff(q) <= 0.0):
            raise InputDomainError("q_grid must be strictly increasing")
        object.__setattr__(self, "q_grid", q)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "_spline", CubicSpline(q, v))

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def from_callable(
        cls,
        q_grid: np.ndarray,
        f: Callable[[np.ndarray], np.ndarray],
        tail_exponent: Optional[float] = None,
        support_radius: Optional[float] = None,
    ) -> "GridFunction1D":
        q = np.asarray(q_grid, dtype=float)
        return cls(q, np.asarray(f(q), dtype=float), tail_exponent, support_radius)

    @classmethod
    def constant(cls, q_grid: np.ndarray, value: float) -> "GridFunction1D":
        """Constant profile, extended constantly on both sides."""
        q = np.asarray(q_grid, dtype=float)
        return cls(q, np.full_like(q, value), tail_exponent=0.0)

    def with_values(
        self, values: np.ndarray, tail_exponent=_SAME_TAIL
    ) -> "GridFunction1D":
        """Same grid and support, new values (and optionally a new tail)."""
        tail = self.tail_exponent if tail_exponent is _SAME_TAIL else tail_exponent
        return GridFunction1D(self.q_grid, values, tail, self.support_radius)

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    @property
    def q_min(self) -> float:
        return float(self.q_grid[0])

    @property
    def q_max(self) -> float:
        return float(self.q_grid[-1])

    def _tail(self, q: np.ndarray) -> np.ndarray:
        tail = self.tail_exponent
        if tail is None:
            raise ExtrapolationError(
                f"profile queried at q = {float(np.min(q))!r} below grid start {self.q_min!r} "
                f"and no tail model is set"
            )
        if math.isinf(tail) and tail < 0:
            return np.zeros_like(q)
        ratio = japanese_bracket(q) / japanese_bracket(self.q_min)
        return self.values[0] * ratio ** tail

    def __call__(self, q):
        q_arr = np.asarray(q, dtype=float)
        flat = np.atleast_1d(q_arr).ravel()
        out = np.empty_like(flat)
        below = flat < self.q_min
        above = flat > self.q_max
        inside = ~(below | above)
        out[inside] = self._spline(flat[inside])
        if np.any(below):
            out[below] = self._tail(flat[below])
        if np.any(above):
            out[above] = 0.0 if self.support_radius is not None else self.values[-1]
        if self.support_radius is not None:
            out[flat >= self.support_radius] = 0.0
        out = out.reshape(q_arr.shape)
        return float(out) if out.ndim == 0 else out

    # ------------------------------------------------------------------
    # Calculus
    # ------------------------------------------------------------------

    def derivative(self) -> "GridFunction1D":
        """Spline derivative re-tabulated on the same grid."""
        d = self._spline(self.q_grid, 1)
        if self.support_radius is not None:
            d = np.where(self.q_grid >= self.support_radius, 0.0, d)
        return self.with_values(d, _shift_tail(self.tail_exponent, -1.0))

    def derivative_n(self, n: int) -> "GridFunction1D":
        g = self
        for _ in range(n):
            g = g.derivative()
        return g

    def times_q_power(self, m: int) -> "GridFunction1D":
        """q^m times the profile."""
        if m == 0:
            return self
        return self.with_values(self.q_grid ** m * self.values, _shift_tail(self.tail_exponent, float(m)))

    def scale(self, factor: float) -> "GridFunction1D":
        return self.with_values(factor * self.values)

    def __add__(self, other: "GridFunction1D") -> "GridFunction1D":
        if not np.array_equal(self.q_grid, other.q_grid):
            raise InputDomainError("grid functions must share a grid to be added")
        tails = [self.tail_exponent, other.tail_exponent]
        tail = None if None in tails else max(tails)
        support = None
        if self.support_radius is not None and other.support_radius is not None:
            support = max(self.support_radius, other.support_radius)
        return GridFunction1D(self.q_grid, self.values + other.values, tail, support)

    def _upper(self) -> float:
        if self.support_radius is None:
            return self.q_max
        return min(self.q_max, self.support_radius)

    def integrate(self, a: float, b: float) -> float:
        """
        Integral over [a, b], using the tail model below the grid.

        Args:
            a: Lower limit
            b: Upper limit

        Returns:
            float: Integral value

        Raises:
            ExtrapolationError: If the range reaches below the grid without a tail model
        """
        if b < a:
            return -self.integrate(b, a)
        total = 0.0
        if a < self.q_min:
            tail_end = min(b, self.q_min)
            tail = self.tail_exponent
            if tail is None:
                raise ExtrapolationError(
                    f"integral from {a!r} reaches below grid start {self.q_min!r} without a tail model"
                )
            if not (math.isinf(tail) and tail < 0):
                logger.debug(f"Integrating tail model on [{a}, {tail_end}]")
                part, _ = quad(lambda p: float(self._tail(np.array([p]))[0]), a, tail_end,
                               epsabs=1e-13, epsrel=1e-12, limit=200)
                total += part
        lo = max(a, self.q_min)
        hi = min(b, self._upper())
        if hi > lo:
            total += float(self._spline.integrate(lo, hi))
        if self.support_radius is None and b > self.q_max:
            total += self.values[-1] * (b - max(a, self.q_max))
        return total

    def antiderivative_at_nodes(self) -> np.ndarray:
        """Integral from q_min to every node (support cutoff applied)."""
        anti = self._spline.antiderivative()
        nodes = self.q_grid
        if self.support_radius is not None:
            nodes = np.minimum(nodes, max(self.support_radius, self.q_min))
        return anti(nodes) - anti(self.q_min)

    def __len__(self) -> int:
        return len(self.q_grid)
