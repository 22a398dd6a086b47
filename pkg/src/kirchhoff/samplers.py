"""
Space-time samplers: a function phi with its gradient and box phi = F.

Conventions: box = -d_t^2 + Laplacian; points are (n, 3) arrays and times
are scalars or length-n arrays. A sampler may restrict the region where it
can be evaluated.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..errors import InputDomainError, QuadratureDomainError

logger = logging.getLogger(__name__)

ScalarField = Callable[[np.ndarray, np.ndarray], np.ndarray]
GradientField = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]
Domain = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _points(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(1, 3)
    if x.ndim != 2 or x.shape[1] != 3:
        raise InputDomainError(f"points must have shape (n, 3), got {x.shape}")
    return x


@dataclass(frozen=True)
class SpacetimeSampler:
    """
    Function phi on R^{1+3} with gradient and source.

    Attributes:
        name: Catalog name
        phi: phi(t, x)
        grad: Returns (phi_t, grad_x phi) with shapes (n,) and (n, 3)
        F: box phi, or None when phi solves the homogeneous equation
        params: Parameters recorded in reports
        domain: Predicate of the points where phi may be sampled
    """

    name: str
    phi: ScalarField
    grad: GradientField
    F: Optional[ScalarField] = None
    params: Dict[str, Any] = field(default_factory=dict)
    domain: Optional[Domain] = None

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {"name": self.name, **self.params}

    def check_domain(self, t, x) -> None:
        """
        Raises:
            QuadratureDomainError: If any point lies outside the validity region
        """
        if self.domain is None:
            return
        ok = np.asarray(self.domain(np.broadcast_to(np.asarray(t, dtype=float), (len(x),)), x))
        if not np.all(ok):
            bad = x[np.flatnonzero(~ok)[0]]
            raise QuadratureDomainError(f"sampler '{self.name}' is not valid at x = {bad.tolist()}")

    def value(self, t, x) -> np.ndarray:
        x = _points(x)
        self.check_domain(t, x)
        return np.broadcast_to(np.asarray(self.phi(np.asarray(t, dtype=float), x), dtype=float), (len(x),))

    def gradient(self, t, x) -> Tuple[np.ndarray, np.ndarray]:
        x = _points(x)
        self.check_domain(t, x)
        phi_t, grad_x = self.grad(np.asarray(t, dtype=float), x)
        return (
            np.broadcast_to(np.asarray(phi_t, dtype=float), (len(x),)),
            np.broadcast_to(np.asarray(grad_x, dtype=float), x.shape),
        )

    def source(self, t, x) -> np.ndarray:
        x = _points(x)
        if self.F is None:
            return np.zeros(len(x))
        self.check_domain(t, x)
        return np.broadcast_to(np.asarray(self.F(np.asarray(t, dtype=float), x), dtype=float), (len(x),))

    def gradient_consistency(
        self, n_points: int = 16, step: float = 1e-5, seed: int = 0, scale: float = 2.0
    ) -> float:
        """
        Largest mismatch between grad and central differences of phi.

        Args:
            n_points: Number of random sample points
            step: Finite-difference step
            seed: Seed of the point generator
            scale: Points lie in [0, scale] x [-scale, scale]^3

        Returns:
            float: Max absolute difference over points and components
        """
        rng = np.random.default_rng(seed)
        t = rng.uniform(0.0, scale, n_points)
        x = rng.uniform(-scale, scale, (n_points, 3))
        phi_t, grad_x = self.grad(t, x)
        numeric_t = (self.phi(t + step, x) - self.phi(t - step, x)) / (2.0 * step)
        worst = float(np.max(np.abs(np.broadcast_to(phi_t, (n_points,)) - numeric_t)))
        for i in range(3):
            e = np.zeros(3)
            e[i] = step
            numeric = (self.phi(t, x + e) - self.phi(t, x - e)) / (2.0 * step)
            exact = np.broadcast_to(np.asarray(grad_x, dtype=float), x.shape)[:, i]
            worst = max(worst, float(np.max(np.abs(exact - numeric))))
        return worst


# ================================
# Manufactured catalog
# ================================

def affine() -> SpacetimeSampler:
    """phi = t, box phi = 0."""
    return SpacetimeSampler(
        name="affine",
        phi=lambda t, x: t + 0.0 * x[:, 0],
        grad=lambda t, x: (np.ones(len(x)), np.zeros_like(x)),
    )


def cubic() -> SpacetimeSampler:
    """phi = t^3, box phi = -6t."""
    return SpacetimeSampler(
        name="cubic",
        phi=lambda t, x: t ** 3 + 0.0 * x[:, 0],
        grad=lambda t, x: (3.0 * t ** 2 + 0.0 * x[:, 0], np.zeros_like(x)),
        F=lambda t, x: -6.0 * t + 0.0 * x[:, 0],
    )


def plane_wave(k: Sequence[float] = (1.0, 0.0, 0.0)) -> SpacetimeSampler:
    """phi = cos(k.x - |k| t), box phi = 0."""
    k_vec = np.asarray(k, dtype=float)
    omega = float(np.linalg.norm(k_vec))
    if omega == 0.0:
        raise InputDomainError("plane wave needs a nonzero wave vector")

    def phase(t, x):
        return x @ k_vec - omega * t

    def grad(t, x):
        s = np.sin(phase(t, x))
        return omega * s, -s[:, None] * k_vec[None, :]

    return SpacetimeSampler(
        name="plane_wave",
        phi=lambda t, x: np.cos(phase(t, x)),
        grad=grad,
        params={"k": k_vec.tolist()},
    )


def quadratic() -> SpacetimeSampler:
    """phi = |x|^2 + 3t^2, box phi = 0."""
    return SpacetimeSampler(
        name="quadratic",
        phi=lambda t, x: np.sum(x * x, axis=1) + 3.0 * t ** 2,
        grad=lambda t, x: (6.0 * t + 0.0 * x[:, 0], 2.0 * x),
    )


def growing() -> SpacetimeSampler:
    """phi = t |x|^2, box phi = 6t."""
    def grad(t, x):
        t_col = np.broadcast_to(np.asarray(t, dtype=float), (len(x),))
        return np.sum(x * x, axis=1), 2.0 * t_col[:, None] * x

    return SpacetimeSampler(
        name="growing",
        phi=lambda t, x: t * np.sum(x * x, axis=1),
        grad=grad,
        F=lambda t, x: 6.0 * t + 0.0 * x[:, 0],
    )


CATALOG: Dict[str, Callable[[], SpacetimeSampler]] = {
    "affine": affine,
    "cubic": cubic,
    "plane_wave": plane_wave,
    "quadratic": quadratic,
    "growing": growing,
}


def catalog_sampler(name: str) -> SpacetimeSampler:
    """
    Build a catalog sampler by name.

    Raises:
        InputDomainError: For unknown names
    """
    try:
        return CATALOG[name]()
    except KeyError as e:
        raise InputDomainError(f"unknown sampler '{name}', expected one of {sorted(CATALOG)}") from e
