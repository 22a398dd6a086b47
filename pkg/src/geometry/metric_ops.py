"""
Metric contractions: G(omega) and the null-condition predicate.
"""

import logging
from typing import Sequence

import numpy as np

from ..errors import InputDomainError
from ..models.metric import MetricModel

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-10


def _null_covector(omega: Sequence[float]) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    if w.shape != (3,):
        raise InputDomainError(f"omega must be a 3-vector, got shape {w.shape}")
    norm = float(np.linalg.norm(w))
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise InputDomainError(f"omega must be a unit vector, |omega| = {norm!r}")
    return np.concatenate(([-1.0], w))


def evaluate_G(metric: MetricModel, omega: Sequence[float]) -> float:
    """
    Contract g0 with the null covector w = (-1, omega).

    Args:
        metric: Metric model
        omega: Unit 3-vector

    Returns:
        float: G(omega) = g0^{ab} w_a w_b

    Raises:
        InputDomainError: If omega is not a unit vector
    """
    w = _null_covector(omega)
    return float(w @ metric.g0_array @ w)


def evaluate_G_nodes(metric: MetricModel, nodes: np.ndarray) -> np.ndarray:
    """G at every row of an (n, 3) array of unit vectors."""
    nodes = np.asarray(nodes, dtype=float)
    w = np.hstack([-np.ones((nodes.shape[0], 1)), nodes])
    return np.einsum("na,ab,nb->n", w, metric.g0_array, w)


def null_condition_satisfied(metric: MetricModel) -> bool:
    """True iff every entry of g0 vanishes, equivalently G = 0 on the sphere."""
    return bool(np.all(metric.g0_array == 0.0))


def rotate_g0(g0: np.ndarray, rotation: np.ndarray) -> np.ndarray:
    """
    Conjugate g0 by a spatial rotation so that G_rotated(R omega) = G(omega).

    Args:
        g0: 4x4 linearization coefficients
        rotation: 3x3 orthogonal matrix

    Returns:
        np.ndarray: Rotated coefficients
    """
    lift = np.eye(4)
    lift[1:, 1:] = np.asarray(rotation, dtype=float)
    return lift @ np.asarray(g0, dtype=float) @ lift.T
