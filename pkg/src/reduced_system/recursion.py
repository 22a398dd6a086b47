"""
Commuting-vector-field recursions for the radiation profiles A_I and U_I.

A word Z^I = Z_1 Z_2 ... Z_n is applied innermost letter first. Each
intermediate result is kept symbolically as a map

    (k, m, n) -> AngularPolynomial

standing for sum P(omega) q^m d_q^n B_k, where B_k is the base profile
after k slow-time derivatives (k stays 0 for A_I). Profiles are only
materialized on the grid at the end, grouped by angular monomial.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from ..errors import InputDomainError
from ..geometry.angular import AngularPolynomial, angular_derivative, rotation_derivative
from .grid import GridFunction1D
from .profiles import u_hat_integrand

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int]
Symbolic = Dict[Key, AngularPolynomial]


class Letter(str, Enum):
    """Commuting vector fields: scaling, rotations, boosts and translation."""
    S = "S"
    O12 = "O12"
    O13 = "O13"
    O23 = "O23"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    D = "D"


_ROTATION_AXES = {Letter.O12: (0, 1), Letter.O13: (0, 2), Letter.O23: (1, 2)}
_BOOST_AXIS = {Letter.B1: 0, Letter.B2: 1, Letter.B3: 2}


@dataclass(frozen=True)
class MultiIndexWord:
    """Sequence of letters; the first letter is applied last."""

    letters: Tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "MultiIndexWord":
        """Parse a whitespace or comma separated word such as 'S B1' or ''."""
        tokens = [t for t in text.replace(",", " ").split() if t]
        try:
            return cls(tuple(Letter(t) for t in tokens))
        except ValueError as e:
            raise InputDomainError(f"unknown letter in word {text!r}: {e}") from e

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(letter.value for letter in self.letters)


@dataclass(frozen=True, eq=False)
class TermList:
    """Finite sum of profile(q) * angular(omega)."""

    terms: List[Tuple[GridFunction1D, AngularPolynomial]] = field(default_factory=list)
    s_order: int = 0

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_empty(self) -> bool:
        return not self.terms

    @property
    def is_radial(self) -> bool:
        """True when every angular factor is a constant."""
        return all(set(a.terms) <= {(0, 0, 0)} for _, a in self.terms)

    def evaluate(self, q, omega) -> np.ndarray:
        """Evaluate at matching arrays q (n,) and omega (n, 3), or at a single point."""
        q_arr = np.asarray(q, dtype=float)
        single = q_arr.ndim == 0
        q_arr = np.atleast_1d(q_arr)
        w = np.atleast_2d(np.asarray(omega, dtype=float))
        total = np.zeros(q_arr.shape)
        for profile, angular in self.terms:
            total = total + np.asarray(profile(q_arr)) * angular.evaluate(w)
        return float(total[0]) if single else total

    def radial_profile(self) -> GridFunction1D:
        """Collapse a radial TermList into one grid function."""
        if not self.is_radial:
            raise InputDomainError("TermList has angular dependence")
        if not self.terms:
            raise InputDomainError("empty TermList has no grid")
        total = None
        for profile, angular in self.terms:
            scaled = profile.scale(angular.terms.get((0, 0, 0), 0.0))
            total = scaled if total is None else total + scaled
        return total

    def scale(self, factor: float) -> "TermList":
        return TermList([(p.scale(factor), a) for p, a in self.terms], self.s_order)

    def __add__(self, other: "TermList") -> "TermList":
        return TermList(list(self.terms) + list(other.terms), max(self.s_order, other.s_order))

    def equals(self, other: "TermList") -> bool:
        """Exact equality of angular factors and profile values."""
        if len(self.terms) != len(other.terms) or self.s_order != other.s_order:
            return False
        for (p1, a1), (p2, a2) in zip(self.terms, other.terms):
            if a1 != a2 or not np.array_equal(p1.q_grid, p2.q_grid) or not np.array_equal(p1.values, p2.values):
                return False
        return True


# ----------------------------------------------------------------------
# Symbolic letter rules
# ----------------------------------------------------------------------

def _accumulate(target: Symbolic, key: Key, poly: AngularPolynomial) -> None:
    merged = target.get(key, AngularPolynomial()) + poly
    if merged.is_zero:
        target.pop(key, None)
    else:
        target[key] = merged


def _apply_q_dq(state: Symbolic, weight: AngularPolynomial, out: Symbolic) -> None:
    # q d_q (q^m d^n) = m q^m d^n + q^{m+1} d^{n+1}
    for (k, m, n), poly in state.items():
        scaled = weight * poly
        if m:
            _accumulate(out, (k, m, n), scaled.scale(float(m)))
        _accumulate(out, (k, m + 1, n + 1), scaled)


def _apply_letter(state: Symbolic, letter: Letter, for_u: bool) -> Symbolic:
    out: Symbolic = {}
    if letter == Letter.D:
        return out
    one = AngularPolynomial.constant(1.0)
    if letter == Letter.S:
        _apply_q_dq(state, one, out)
        if for_u:
            for (k, m, n), poly in state.items():
                _accumulate(out, (k + 1, m, n), poly)
                _accumulate(out, (k, m, n), poly.scale(-1.0))
        return out
    if letter in _ROTATION_AXES:
        i, j = _ROTATION_AXES[letter]
        for key, poly in state.items():
            _accumulate(out, key, rotation_derivative(poly, i, j))
        return out
    i = _BOOST_AXIS[letter]
    w_i = AngularPolynomial.coordinate(i)
    _apply_q_dq(state, w_i.scale(-1.0), out)
    zeroth = 1.0 if for_u else 2.0
    for (k, m, n), poly in state.items():
        _accumulate(out, (k, m, n), angular_derivative(poly, i))
        _accumulate(out, (k, m, n), (w_i * poly).scale(-zeroth))
        if for_u:
            _accumulate(out, (k + 1, m, n), w_i * poly)
    return out


def _run_word(word: MultiIndexWord, for_u: bool) -> Symbolic:
    state: Symbolic = {(0, 0, 0): AngularPolynomial.constant(1.0)}
    for letter in reversed(word.letters):
        state = _apply_letter(state, letter, for_u)
        if not state:
            break
    return state


def _materialize(state: Symbolic, base_profile) -> List[Tuple[GridFunction1D, AngularPolynomial]]:
    by_monomial: Dict[Tuple[int, int, int], GridFunction1D] = {}
    for key in sorted(state):
        profile = base_profile(key)
        for exponent, coeff in state[key].terms.items():
            contribution = profile.scale(coeff)
            current = by_monomial.get(exponent)
            by_monomial[exponent] = contribution if current is None else current + contribution
    return [
        (profile, AngularPolynomial({exponent: 1.0}))
        for exponent, profile in sorted(by_monomial.items())
    ]


def derive_AI(a_hat: GridFunction1D, word: MultiIndexWord) -> TermList:
    """
    A_I from A_0 = -2 Ahat by the letter rules
    S -> q d_q, O_ij -> w_i d_j - w_j d_i, B_i -> -q w_i d_q + d_{w_i} - 2 w_i, D -> 0.

    Args:
        a_hat: Radial scattering data
        word: Multi-index word

    Returns:
        TermList: A_I grouped by angular monomial
    """
    state = _run_word(word, for_u=False)
    a0 = a_hat.scale(-2.0)
    cache: Dict[int, GridFunction1D] = {}

    def base(key: Key) -> GridFunction1D:
        _, m, n = key
        if n not in cache:
            cache[n] = a0.derivative_n(n)
        return cache[n].times_q_power(m)

    terms = _materialize(state, base)
    logger.debug(f"derive_AI('{word}') produced {len(terms)} terms")
    return TermList(terms, 0)


def derive_UI(sd, G: float, word: MultiIndexWord, s: float = 0.0) -> TermList:
    """
    U_I from U_0 = U_hat with slow-time derivatives kept symbolic.

    The rules are S -> eps d_s + q d_q - 1, rotations as for A_I,
    B_i -> eps w_i d_s - q w_i d_q + d_{w_i} - w_i, D -> 0. The k-fold
    eps d_s of U_hat is B_k(q) = -eps^k int_q^R Ahat (1/2 G Ahat)^k e^{1/2 G Ahat s} dp,
    materialized at the given s.

    Args:
        sd: ScatteringData
        G: Value of G(omega)
        word: Multi-index word
        s: Slow time at which profiles are tabulated

    Returns:
        TermList: U_I at slow time s; s_order is the largest k used
    """
    state = _run_word(word, for_u=True)
    eps = sd.epsilon
    integrands: Dict[int, GridFunction1D] = {}
    b_cache: Dict[Tuple[int, int], GridFunction1D] = {}

    def integrand(k: int) -> GridFunction1D:
        if k not in integrands:
            integrands[k] = u_hat_integrand(sd, G, s, k).scale(eps ** k)
        return integrands[k]

    def b_profile(k: int, n: int) -> GridFunction1D:
        if (k, n) not in b_cache:
            f = integrand(k)
            if n == 0:
                total = f.integrate(f.q_min, sd.R)
                values = -(total - f.antiderivative_at_nodes())
                b_cache[(k, n)] = f.with_values(values, 0.0)
            else:
                b_cache[(k, n)] = f.derivative_n(n - 1)
        return b_cache[(k, n)]

    def base(key: Key) -> GridFunction1D:
        k, m, n = key
        return b_profile(k, n).times_q_power(m)

    terms = _materialize(state, base)
    s_order = max((k for k, _, _ in state), default=0)
    return TermList(terms, s_order)


def compatibility_residual(sd, G_value: float) -> float:
    """
    max |2 d_q U_0 + A_0| over the grid at s = 0.

    Args:
        sd: ScatteringData
        G_value: G(omega)

    Returns:
        float: Residual in max norm
    """
    empty = MultiIndexWord()
    u0 = derive_UI(sd, G_value, empty, s=0.0).radial_profile()
    a0 = derive_AI(sd.a_hat, empty).radial_profile()
    inside = sd.a_hat.q_grid < sd.R
    return float(np.max(np.abs(2.0 * u0.derivative().values + a0.values)[inside]))
