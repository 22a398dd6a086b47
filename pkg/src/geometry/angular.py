"""
Exact polynomials on the unit sphere.

A polynomial is stored as a map from exponent triples (a, b, c) to
coefficients and kept in canonical form modulo w1^2 + w2^2 + w3^2 = 1:
no stored monomial has c >= 2.
"""

from typing import Dict, Mapping, Tuple

import numpy as np

from ..errors import InputDomainError
from .quadrature import exact_moment

Exponent = Tuple[int, int, int]


def _reduce(terms: Mapping[Exponent, float]) -> Dict[Exponent, float]:
    pending = dict(terms)
    result: Dict[Exponent, float] = {}
    while pending:
        (a, b, c), coeff = pending.popitem()
        if coeff == 0.0:
            continue
        if c >= 2:
            # w3^2 -> 1 - w1^2 - w2^2
            for key, sign in (((a, b, c - 2), 1.0), ((a + 2, b, c - 2), -1.0), ((a, b + 2, c - 2), -1.0)):
                pending[key] = pending.get(key, 0.0) + sign * coeff
        else:
            result[(a, b, c)] = result.get((a, b, c), 0.0) + coeff
    return {k: v for k, v in sorted(result.items()) if v != 0.0}


class AngularPolynomial:
    """Sum of coeff * w1^a w2^b w3^c in canonical reduced form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, float] = None):
        self._terms = _reduce(terms or {})

    @property
    def terms(self) -> Dict[Exponent, float]:
        return dict(self._terms)

    @classmethod
    def constant(cls, value: float) -> "AngularPolynomial":
        return cls({(0, 0, 0): float(value)})

    @classmethod
    def coordinate(cls, axis: int) -> "AngularPolynomial":
        """The polynomial w_axis, axis in {0, 1, 2}."""
        _check_axis(axis)
        exponent = [0, 0, 0]
        exponent[axis] = 1
        return cls({tuple(exponent): 1.0})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def __add__(self, other: "AngularPolynomial") -> "AngularPolynomial":
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, 0.0) + v
        return AngularPolynomial(merged)

    def __sub__(self, other: "AngularPolynomial") -> "AngularPolynomial":
        return self + other.scale(-1.0)

    def __mul__(self, other: "AngularPolynomial") -> "AngularPolynomial":
        product: Dict[Exponent, float] = {}
        for (a1, b1, c1), v1 in self._terms.items():
            for (a2, b2, c2), v2 in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                product[key] = product.get(key, 0.0) + v1 * v2
        return AngularPolynomial(product)

    def scale(self, factor: float) -> "AngularPolynomial":
        return AngularPolynomial({k: factor * v for k, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AngularPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def key(self) -> Tuple[Tuple[Exponent, float], ...]:
        """Hashable canonical form."""
        return tuple(self._terms.items())

    def evaluate(self, omega) -> np.ndarray:
        """Evaluate at a unit vector or at every row of an (n, 3) array."""
        w = np.asarray(omega, dtype=float)
        single = w.ndim == 1
        w = np.atleast_2d(w)
        out = np.zeros(w.shape[0])
        for (a, b, c), coeff in self._terms.items():
            out = out + coeff * w[:, 0] ** a * w[:, 1] ** b * w[:, 2] ** c
        return float(out[0]) if single else out

    def sphere_integral(self) -> float:
        """Exact integral over S^2."""
        return sum(coeff * exact_moment(*k) for k, coeff in self._terms.items())

    def __repr__(self) -> str:
        if not self._terms:
            return "AngularPolynomial(0)"
        parts = [f"{v:g}*w^{k}" for k, v in self._terms.items()]
        return f"AngularPolynomial({' + '.join(parts)})"


def _check_axis(axis: int) -> None:
    if axis not in (0, 1, 2):
        raise InputDomainError(f"axis must be 0, 1 or 2, got {axis}")


def angular_derivative(p: AngularPolynomial, i: int) -> AngularPolynomial:
    """
    Tangential derivative d/dw_i under the degree-0 extension f(x) = f(x/|x|).

    On a monomial w^alpha this gives alpha_i w^{alpha - e_i} - |alpha| w_i w^alpha.

    Args:
        p: Reduced polynomial
        i: Axis index in {0, 1, 2}

    Returns:
        AngularPolynomial: Reduced derivative
    """
    _check_axis(i)
    out: Dict[Exponent, float] = {}
    for exponent, coeff in p.terms.items():
        total = sum(exponent)
        if exponent[i] > 0:
            lowered = list(exponent)
            lowered[i] -= 1
            key = tuple(lowered)
            out[key] = out.get(key, 0.0) + exponent[i] * coeff
        if total > 0:
            raised = list(exponent)
            raised[i] += 1
            key = tuple(raised)
            out[key] = out.get(key, 0.0) - total * coeff
    return AngularPolynomial(out)


def rotation_derivative(p: AngularPolynomial, i: int, j: int) -> AngularPolynomial:
    """(w_i d/dw_j - w_j d/dw_i) p."""
    wi, wj = AngularPolynomial.coordinate(i), AngularPolynomial.coordinate(j)
    return wi * angular_derivative(p, j) - wj * angular_derivative(p, i)
