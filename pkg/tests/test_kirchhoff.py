#!/usr/bin/env python3
"""
Tests for the backward representation formula.

This module tests:
- The manufactured sampler catalog
- Exact reconstruction for polynomial samplers and convergence for a plane wave
- Large-T geometry and the remainder bound
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from src.errors import InputDomainError, QuadratureDomainError
from src.geometry import sphere_rule
from src.kirchhoff import (
    CATALOG,
    SpacetimeSampler,
    affine,
    backward_representation,
    catalog_sampler,
    cubic,
    growing,
    inhomogeneous_part,
    limit_geometry,
    linear_part,
    phi_form_difference,
    plane_wave,
    quadratic,
    remainder_budget,
    remainder_integral,
)


@pytest.fixture(scope="module")
def coarse_sphere():
    return sphere_rule(8)


class TestSamplers:
    """Test the manufactured samplers."""

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_gradient_matches_differences(self, name):
        """Test analytic gradients against central differences."""
        assert catalog_sampler(name).gradient_consistency() < 1e-6

    def test_cubic_source(self):
        """Test box t^3 = -6t."""
        x = np.zeros((2, 3))
        np.testing.assert_allclose(cubic().source(2.0, x), [-12.0, -12.0])

    def test_homogeneous_source_is_zero(self):
        """Test samplers without a source report zeros."""
        np.testing.assert_array_equal(quadratic().source(1.0, np.ones((3, 3))), 0.0)

    def test_invalid_unknown_name(self):
        """Test unknown catalog names."""
        with pytest.raises(InputDomainError):
            catalog_sampler("gaussian")

    def test_invalid_zero_wave_vector(self):
        """Test the plane wave needs k != 0."""
        with pytest.raises(InputDomainError):
            plane_wave((0.0, 0.0, 0.0))

    def test_invalid_point_shape(self):
        """Test points must be (n, 3)."""
        with pytest.raises(InputDomainError):
            affine().value(1.0, np.zeros((2, 2)))


class TestBackwardRepresentation:
    """Test reconstruction of phi(t, x) from time T."""

    def test_affine_is_exact(self, coarse_sphere):
        """Test phi = t is reproduced to round-off."""
        for t, x, T in [(0.5, (0.0, 0.0, 0.0), 3.0), (2.0, (0.3, -0.2, 0.1), 10.0)]:
            value = backward_representation(affine(), t, x, T, coarse_sphere, 4)
            assert value == pytest.approx(t, abs=1e-12)

    def test_cubic_with_source(self, coarse_sphere):
        """Test phi = t^3 at t = 2 needs the source term."""
        value = backward_representation(cubic(), 2.0, (1.0, 0.0, 0.0), 10.0, coarse_sphere, 4)
        assert value == pytest.approx(8.0, abs=1e-9)
        assert linear_part(cubic(), 2.0, (1.0, 0.0, 0.0), 10.0, coarse_sphere) == pytest.approx(-1400.0, abs=1e-8)

    def test_homogeneous_polynomials(self, coarse_sphere):
        """Test |x|^2 + 3t^2 and t |x|^2 at (2, e1)."""
        assert backward_representation(quadratic(), 2.0, (1.0, 0.0, 0.0), 6.0, coarse_sphere, 4) == pytest.approx(
            13.0, abs=1e-9
        )
        assert backward_representation(growing(), 2.0, (1.0, 0.0, 0.0), 6.0, coarse_sphere, 4) == pytest.approx(
            2.0, abs=1e-9
        )

    def test_plane_wave_converges(self):
        """Test the plane wave at t = 1, x = (0.2, 0, 0) from T = 4."""
        expected = math.cos(-0.8)
        errors = [
            abs(backward_representation(plane_wave(), 1.0, (0.2, 0.0, 0.0), 4.0, sphere_rule(d), 8) - expected)
            for d in (6, 12, 24)
        ]
        assert errors[-1] < 1e-8
        assert errors[-1] < errors[0]
        assert expected == pytest.approx(0.696707, abs=1e-6)

    def test_source_free_inhomogeneous_part(self, coarse_sphere):
        """Test samplers without F contribute nothing from the interior."""
        assert inhomogeneous_part(quadratic(), 1.0, (0.0, 0.0, 0.0), 3.0, coarse_sphere, 4) == 0.0

    @pytest.mark.parametrize("T", [1.0, 0.5])
    def test_invalid_final_time(self, coarse_sphere, T):
        """Test T <= t is rejected."""
        with pytest.raises(InputDomainError):
            linear_part(affine(), 1.0, (0.0, 0.0, 0.0), T, coarse_sphere)

    def test_invalid_point(self, coarse_sphere):
        """Test x must be a 3-vector."""
        with pytest.raises(InputDomainError):
            linear_part(affine(), 1.0, (0.0, 0.0), 3.0, coarse_sphere)

    def test_invalid_radial_nodes(self, coarse_sphere):
        """Test at least one radial node."""
        with pytest.raises(InputDomainError):
            inhomogeneous_part(cubic(), 1.0, (0.0, 0.0, 0.0), 3.0, coarse_sphere, 0)

    def test_invalid_domain(self, coarse_sphere):
        """Test samplers restricted to a ball refuse points outside it."""
        ball = SpacetimeSampler(
            name="ball",
            phi=lambda t, x: np.zeros(len(x)),
            grad=lambda t, x: (np.zeros(len(x)), np.zeros((len(x), 3))),
            domain=lambda t, x: np.linalg.norm(x, axis=1) < 1.0,
        )
        with pytest.raises(QuadratureDomainError):
            linear_part(ball, 0.0, (0.0, 0.0, 0.0), 5.0, coarse_sphere)


class TestPhiForm:
    """Test the Phi-form approximation of the linear part."""

    def test_difference_within_bound(self):
        """Test the plane-wave difference stays below sqrt(2) |x| sup|d phi|."""
        comparison = phi_form_difference(plane_wave(), 1.0, (0.2, 0.1, 0.0), 50.0, sphere_rule(24))
        assert comparison.bound > 0.0
        assert comparison.difference <= math.sqrt(2.0) * comparison.bound + 1e-12

    def test_origin_is_exact(self, coarse_sphere):
        """Test x = 0 gives matching forms and zero bound."""
        comparison = phi_form_difference(quadratic(), 1.0, (0.0, 0.0, 0.0), 5.0, coarse_sphere)
        assert comparison.bound == 0.0
        assert comparison.difference == pytest.approx(0.0, abs=1e-9)


class TestLimitGeometry:
    """Test the large-T geometry of y = x - (T - t) theta."""

    def test_documented_values(self):
        """Test t = 10, x = (5, 0, 0), T = 1000, theta = e3."""
        geometry = limit_geometry(10.0, (5.0, 0.0, 0.0), 1000.0, (0.0, 0.0, 1.0))
        assert geometry.norm_y == pytest.approx(990.01263, abs=1e-5)
        assert geometry.T_minus_norm_y == pytest.approx(9.98737, abs=1e-5)
        assert geometry.direction_error == pytest.approx(5.05e-3, rel=1e-2)

    def test_origin(self):
        """Test x = 0 gives T - |y| = t and no direction error."""
        geometry = limit_geometry(3.0, (0.0, 0.0, 0.0), 100.0, (1.0, 0.0, 0.0))
        assert geometry.T_minus_norm_y == pytest.approx(3.0, abs=1e-12)
        assert geometry.direction_error == pytest.approx(0.0, abs=1e-15)

    def test_approaches_optical_function(self):
        """Test T - |y| tends to t + x.theta."""
        x, theta = (1.0, 2.0, 0.5), (0.0, 0.6, 0.8)
        gaps = [
            abs(limit_geometry(4.0, x, T, theta).T_minus_norm_y - (4.0 + 2.0 * 0.6 + 0.5 * 0.8))
            for T in (1e2, 1e3, 1e4)
        ]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_invalid_theta(self):
        """Test non-unit directions."""
        with pytest.raises(InputDomainError):
            limit_geometry(1.0, (0.0, 0.0, 0.0), 10.0, (1.0, 1.0, 0.0))

    def test_invalid_final_time(self):
        """Test T <= t."""
        with pytest.raises(InputDomainError):
            limit_geometry(10.0, (0.0, 0.0, 0.0), 10.0, (1.0, 0.0, 0.0))


class TestRemainderBudget:
    """Test the remainder integral and the explicit bound."""

    def test_fast_decay_integral(self):
        """Test gamma1 = 4 at t = 10, T = 1e4."""
        assert remainder_integral(10.0, 1e4, 4.0) == pytest.approx(9.90e-3, rel=1e-3)

    def test_logarithmic_case(self):
        """Test gamma1 = 2 gives 2 log(<T - t> / <t>)."""
        expected = 2.0 * math.log(math.sqrt(1.0 + 90.0 ** 2) / math.sqrt(1.0 + 10.0 ** 2))
        assert remainder_integral(10.0, 100.0, 2.0) == pytest.approx(expected, rel=1e-12)

    def test_matches_quadrature(self):
        """Test the closed form against adaptive quadrature."""
        numeric, _ = quad(lambda rho: (1.0 + rho) ** -1.5, 100.0, 90.0 ** 2)
        assert remainder_integral(10.0, 100.0, 3.0) == pytest.approx(numeric, rel=1e-6)

    def test_source_free_budget(self):
        """Test M = 0 leaves |x| sup|d phi|."""
        assert remainder_budget(5.0, (3.0, 4.0, 0.0), 20.0, 0.0, 3.0, 1.0, 2.0) == pytest.approx(10.0)

    def test_source_increases_budget(self):
        """Test M > 0 adds a positive source term."""
        base = remainder_budget(5.0, (1.0, 0.0, 0.0), 20.0, 0.0, 3.0, 1.0, 1.0)
        assert remainder_budget(5.0, (1.0, 0.0, 0.0), 20.0, 1.0, 3.0, 1.0, 1.0) > base

    @pytest.mark.parametrize("gamma1, gamma2, T", [(0.0, 1.0, 20.0), (3.0, -1.0, 20.0), (3.0, 1.0, 10.0)])
    def test_invalid_budget(self, gamma1, gamma2, T):
        """Test non-positive exponents and T <= 2t."""
        with pytest.raises(InputDomainError):
            remainder_budget(5.0, (1.0, 0.0, 0.0), T, 1.0, gamma1, gamma2, 1.0)
