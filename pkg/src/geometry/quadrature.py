"""
Quadrature on the unit sphere and on intervals.

The sphere rule is a product of Gauss-Legendre nodes in cos(polar angle)
and a uniform azimuthal trapezoid rule, exact for spherical polynomials up
to the requested degree.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma

from ..errors import InputDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SphereRule:
    """Nodes on S^2 with positive weights summing to 4 pi."""

    nodes: np.ndarray
    weights: np.ndarray
    degree: int

    def __len__(self) -> int:
        return len(self.weights)

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum of values sampled at the nodes (pairwise summation)."""
        return float(np.sum(self.weights * np.asarray(values, dtype=float)))

    def integrate_function(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Integrate f, which maps an (n, 3) node array to n values."""
        return self.integrate(f(self.nodes))


def gauss_legendre(n: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes and weights on [a, b].

    Args:
        n: Number of nodes
        a: Left end
        b: Right end

    Returns:
        Tuple[np.ndarray, np.ndarray]: nodes, weights
    """
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def sphere_rule(degree: int) -> SphereRule:
    """
    Product rule exact on spherical polynomials of total degree <= degree.

    Args:
        degree: Exactness degree, at least 2

    Returns:
        SphereRule: Nodes and weights

    Raises:
        InputDomainError: If degree < 2
    """
    if degree < 2:
        raise InputDomainError(f"sphere rule degree must be >= 2, got {degree}")
    n_polar = int(math.ceil((degree + 1) / 2))
    n_azimuth = degree + 1
    z, wz = np.polynomial.legendre.leggauss(n_polar)
    phi = 2.0 * np.pi * np.arange(n_azimuth) / n_azimuth
    zz, pp = np.meshgrid(z, phi, indexing="ij")
    rho = np.sqrt(1.0 - zz ** 2)
    nodes = np.stack([rho * np.cos(pp), rho * np.sin(pp), zz], axis=-1).reshape(-1, 3)
    weights = np.repeat(wz * (2.0 * np.pi / n_azimuth), n_azimuth)
    logger.debug(f"Built sphere rule of degree {degree} with {len(weights)} nodes")
    return SphereRule(nodes=nodes, weights=weights, degree=degree)


def exact_moment(a: int, b: int, c: int) -> float:
    """Exact integral of w1^a w2^b w3^c over the unit sphere."""
    if a % 2 or b % 2 or c % 2:
        return 0.0
    return float(
        2.0 * gamma((a + 1) / 2) * gamma((b + 1) / 2) * gamma((c + 1) / 2)
        / gamma((a + b + c + 3) / 2)
    )


def spherical_mean_reduction(profile, t: float, r: float) -> float:
    """
    Sphere integral of profile(-t + r omega.theta) reduced to one dimension.

    By rotation invariance the integral equals 2 pi r^{-1} times the
    integral of profile over [-t - r, -t + r].

    Args:
        profile: Callable of one variable, or an object with integrate(a, b)
        t: Time
        r: Positive radius

    Returns:
        float: Value of the sphere integral

    Raises:
        InputDomainError: If r <= 0
    """
    if r <= 0.0:
        raise InputDomainError(f"spherical_mean_reduction needs r > 0, got {r}")
    a, b = -t - r, -t + r
    integrate = getattr(profile, "integrate", None)
    if integrate is not None:
        total = integrate(a, b)
    else:
        total, _ = quad(profile, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
    return 2.0 * np.pi * total / r
