#!/usr/bin/env python3
"""
Tests for the interior asymptotics and the vanishing criteria.

This module tests:
- The interior formula on its radial and quadrature paths
- Comparison of simulated fields with the formula
- Spherical-means decay and the dyadic sampling helper
- Classification of the vanishing hypotheses and the field-side scan
"""

import math
from unittest.mock import patch

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import ExtractionError, FieldRangeError, InputDomainError
from src.geometry import sphere_rule
from src.interior import (
    assumption_scan,
    axis_residuals,
    classify_vanishing,
    dyadic_times,
    interior_prediction,
    spherical_means_decay,
    verify_interior,
)
from src.models import ScanStatus
from src.models.experiment import SampleSpec
from src.reduced_system import GridFunction1D, ScatteringData, japanese_bracket
from src.reduced_system.recursion import MultiIndexWord, derive_AI

EPSILON = 0.1
DELTA = 0.05


def _scattering(q, f, tail):
    a_hat = GridFunction1D.from_callable(q, f, tail_exponent=tail, support_radius=1.0)
    return ScatteringData.from_a_hat(a_hat, EPSILON, DELTA, 1.0)


@pytest.fixture(scope="module")
def power_scattering():
    """Ahat = <q>^{-2}: positive with an integrable tail."""
    return _scattering(np.linspace(-10.0, 1.0, 1101), lambda q: japanese_bracket(q) ** -2.0, -2.0)


@pytest.fixture(scope="module")
def slow_mixed_scattering():
    """Ahat = 2 exp(-q^2) - <q>^{-1/2}: both signs and a slow negative tail."""
    return _scattering(
        np.linspace(-50.0, 1.0, 2041), lambda q: 2.0 * np.exp(-q ** 2) - japanese_bracket(q) ** -0.5, -0.5
    )


class TestInteriorPrediction:
    """Test the interior formula."""

    def test_axis_value(self, linear_scattering):
        """Test the undifferentiated prediction on the axis is 2 eps Ahat(-t)."""
        terms = derive_AI(linear_scattering.a_hat, MultiIndexWord.parse(""))
        value = interior_prediction(terms, EPSILON, 0.5, (0.0, 0.0, 0.0))
        assert value == pytest.approx(2.0 * EPSILON * linear_scattering.a_hat(-0.5), rel=1e-12)

    def test_radial_path_matches_quadrature(self, linear_scattering):
        """Test the one-dimensional reduction against the sphere rule."""
        terms = derive_AI(linear_scattering.a_hat, MultiIndexWord.parse(""))
        x = (0.0, 0.0, 0.5)
        reduced = interior_prediction(terms, EPSILON, 1.2, x)
        direct = interior_prediction(terms, EPSILON, 1.2, x, sphere=sphere_rule(40), radial_path=False)
        assert reduced == pytest.approx(direct, abs=1e-6)

    def test_empty_terms(self, linear_scattering):
        """Test words with a translation give zero."""
        terms = derive_AI(linear_scattering.a_hat, MultiIndexWord.parse("D"))
        assert interior_prediction(terms, EPSILON, 2.0, (0.0, 0.0, 0.5)) == 0.0

    def test_angular_terms_use_sphere(self, linear_scattering):
        """Test boost terms go through the sphere rule."""
        terms = derive_AI(linear_scattering.a_hat, MultiIndexWord.parse("B1"))
        value = interior_prediction(terms, EPSILON, 1.0, (0.3, 0.0, 0.0), sphere=sphere_rule(24))
        assert math.isfinite(value)

    def test_invalid_angular_without_sphere(self, linear_scattering):
        """Test angular TermLists need a sphere rule."""
        terms = derive_AI(linear_scattering.a_hat, MultiIndexWord.parse("B1"))
        with pytest.raises(InputDomainError):
            interior_prediction(terms, EPSILON, 1.0, (0.3, 0.0, 0.0))

    @pytest.mark.parametrize("x", [(1.0, 0.0, 0.0), (0.0, 2.0, 0.0)])
    def test_invalid_outside_cone(self, linear_scattering, x):
        """Test |x| >= t is rejected."""
        terms = derive_AI(linear_scattering.a_hat, MultiIndexWord.parse(""))
        with pytest.raises(InputDomainError):
            interior_prediction(terms, EPSILON, 1.0, x)


class TestVerifyInterior:
    """Test the comparison of simulated fields with the interior formula."""

    def test_row_layout(self, minkowski_field, linear_scattering):
        """Test rows sit on r = j (t - t^gamma) / n with the <t - r>^{-2} reference."""
        spec = SampleSpec(t_values=[6.0, 12.0, 24.0], radii_per_time=8)
        report = verify_interior(minkowski_field, linear_scattering, "", 0.6, spec)
        assert len(report.rows) == 24
        for row in report.rows:
            edge = row.t - row.t ** 0.6
            assert 0.0 <= row.r < edge
            assert row.bound_ref == pytest.approx(japanese_bracket(row.t - row.r) ** -2.0)
            assert row.abs_err == pytest.approx(abs(row.u_num - row.prediction))

    def test_flat_interior_is_quiet(self, minkowski_field, linear_scattering):
        """Test the flat field and the prediction both vanish behind the support."""
        spec = SampleSpec(t_values=[6.0, 12.0], radii_per_time=4)
        report = verify_interior(minkowski_field, linear_scattering, "", 0.6, spec)
        assert max(abs(row.prediction) for row in report.rows) < 1e-8
        assert max(row.abs_err for row in report.rows) < 1e-3 * EPSILON

    def test_scaling_word(self, minkowski_field, linear_scattering):
        """Test the S word samples t u_t + r u_r."""
        spec = SampleSpec(t_values=[6.0], radii_per_time=4)
        report = verify_interior(minkowski_field, linear_scattering, "S", 0.6, spec)
        assert report.word == "S"
        assert len(report.rows) == 4

    def test_noise_floor_passes(self, minkowski_field, linear_scattering):
        """Test rows below the noise floor count as agreement."""
        spec = SampleSpec(t_values=[6.0, 12.0], radii_per_time=4, noise_floor=1.0)
        report = verify_interior(minkowski_field, linear_scattering, "", 0.6, spec)
        assert report.passed
        assert report.fitted_exponent_q == -math.inf

    def test_zero_prediction_against_live_field_fails(self, nonlinear_field, zero_scattering):
        """Test a vanishing prediction cannot pass against a nonzero interior field."""
        spec = SampleSpec(t_values=[6.0, 12.0], radii_per_time=3)
        report = verify_interior(nonlinear_field, zero_scattering, "", 0.6, spec)
        live = [row for row in report.rows if abs(row.u_num) > spec.noise_floor]
        assert live
        assert all(row.prediction == 0.0 for row in report.rows)
        assert not report.passed

    def test_missing_exponent_fit_fails(self, nonlinear_field, linear_scattering):
        """Test live rows without a finite <t - r> fit give a failing verdict."""
        spec = SampleSpec(t_values=[6.0, 12.0], radii_per_time=3)
        with patch("src.interior.verification.fit_loglog_slope", return_value=(-math.inf, 0.0)):
            report = verify_interior(nonlinear_field, linear_scattering, "", 0.6, spec)
        assert not report.passed
        assert any("exponent fit" in w for w in report.warnings)

    @pytest.mark.parametrize("radii", [0, 1, 2])
    def test_invalid_radii_per_time(self, radii):
        """Test the lattice needs at least three radii per time."""
        with pytest.raises(ValidationError):
            SampleSpec(t_values=[6.0], radii_per_time=radii)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 0.2])
    def test_invalid_gamma(self, minkowski_field, linear_scattering, gamma):
        """Test gamma outside (1/2, 1)."""
        with pytest.raises(InputDomainError):
            verify_interior(minkowski_field, linear_scattering, "", gamma, SampleSpec(t_values=[6.0]))

    @pytest.mark.parametrize("word", ["B1", "SS", "O12"])
    def test_invalid_word(self, minkowski_field, linear_scattering, word):
        """Test only '' and 'S' are supported."""
        with pytest.raises(InputDomainError):
            verify_interior(minkowski_field, linear_scattering, word, 0.6, SampleSpec(t_values=[6.0]))

    def test_invalid_early_time(self, minkowski_field, linear_scattering):
        """Test sample times before e^{delta/eps}."""
        with pytest.raises(InputDomainError):
            verify_interior(minkowski_field, linear_scattering, "", 0.6, SampleSpec(t_values=[1.0]))

    def test_insufficient_horizon(self, minkowski_field, linear_scattering):
        """Test sample times beyond the simulated horizon."""
        with pytest.raises(ExtractionError):
            verify_interior(minkowski_field, linear_scattering, "", 0.6, SampleSpec(t_values=[30.0]))

    def test_axis_residuals_inside_support(self, minkowski_field, linear_scattering):
        """Test u(t, 0) = 2 eps Ahat(-t) for flat data while the wave crosses the origin."""
        residuals = axis_residuals(minkowski_field, linear_scattering, [0.2, 0.3])
        assert max(residuals) < 0.05


class TestSphericalMeansDecay:
    """Test the spherical means of U_hat along q = -2t."""

    def test_dyadic_times(self):
        """Test doubling from t_start up to t_end."""
        assert dyadic_times(4.0, 64.0) == [4.0, 8.0, 16.0, 32.0, 64.0]
        assert dyadic_times(4.0, 7.0) == [4.0]

    @pytest.mark.parametrize("start, end", [(0.0, 4.0), (-1.0, 4.0), (8.0, 4.0)])
    def test_invalid_dyadic_range(self, start, end):
        """Test non-positive starts and reversed ranges."""
        with pytest.raises(InputDomainError):
            dyadic_times(start, end)

    def test_linear_means_do_not_decay(self, power_scattering):
        """Test M(t) = 4 pi (pi/4 + atan 2t) for G = 0."""
        table = spherical_means_decay(power_scattering, 0.0, [4.0, 8.0, 16.0])
        row = table.rows[0]
        assert row.M == pytest.approx(4.0 * math.pi * (0.25 * math.pi + math.atan(8.0)), rel=1e-4)
        assert row.s == pytest.approx(EPSILON * math.log(4.0) - DELTA)
        assert not table.passed
        assert table.fitted_exponent > table.threshold

    def test_zero_data_decays(self, zero_scattering):
        """Test vanishing means pass."""
        table = spherical_means_decay(zero_scattering, 1.0, dyadic_times(4.0, 32.0))
        assert table.passed
        assert table.fitted_exponent == -math.inf

    def test_invalid_early_sample(self, power_scattering):
        """Test samples below 2 e^{delta/eps}."""
        with pytest.raises(InputDomainError):
            spherical_means_decay(power_scattering, 0.0, [1.0, 4.0])

    def test_linear_scattering_means_vanish(self, linear_scattering):
        """Test the flat radiation field has spherical means at round-off level."""
        table = spherical_means_decay(linear_scattering, 0.0, dyadic_times(4.0, 32.0))
        assert len(table.rows) == 4
        assert max(abs(row.M) for row in table.rows) <= 1e-10


class TestClassifyVanishing:
    """Test the vanishing hypotheses on Ahat."""

    def test_zero_data(self, zero_scattering, nonlinear_metric):
        """Test identically zero Ahat."""
        record = classify_vanishing(zero_scattering, nonlinear_metric, sphere_rule(4))
        assert "vanishes identically" in record.verdict

    def test_null_condition_not_applicable(self, linear_scattering, minkowski):
        """Test the flat metric makes the criteria inapplicable."""
        record = classify_vanishing(linear_scattering, minkowski, sphere_rule(4))
        assert record.null_condition
        assert "not applicable" in record.verdict

    def test_compact_data_is_inconsistent(self, linear_scattering, nonlinear_metric):
        """Test compactly supported Ahat with G > 0 meets the integrability hypothesis."""
        record = classify_vanishing(linear_scattering, nonlinear_metric, sphere_rule(4))
        assert not record.hypothesis("a").met
        assert record.hypothesis("b").met
        assert record.hypothesis("c").met
        assert "inconsistent" in record.verdict

    def test_positive_data_meets_sign(self, power_scattering, nonlinear_metric):
        """Test one-signed Ahat meets the sign hypothesis."""
        record = classify_vanishing(power_scattering, nonlinear_metric, sphere_rule(4))
        assert record.hypothesis("a").met

    def test_slow_mixed_data_is_consistent(self, slow_mixed_scattering, nonlinear_metric):
        """Test Ahat with both signs and a slow tail meets no hypothesis."""
        record = classify_vanishing(slow_mixed_scattering, nonlinear_metric, sphere_rule(4))
        assert [check.met for check in record.hypotheses] == [False, False, False]
        assert record.tail_exponent == pytest.approx(-0.5, abs=0.02)
        assert "consistent with a nonzero solution" in record.verdict

    def test_constants(self, linear_scattering, nonlinear_metric):
        """Test C0 = sup|G Ahat| / 2 and B0 = C0 / eps + 1."""
        record = classify_vanishing(linear_scattering, nonlinear_metric, sphere_rule(4))
        scale = float(np.max(np.abs(linear_scattering.a_hat.values)))
        assert record.C0 == pytest.approx(0.5 * scale, rel=1e-12)
        assert record.B0 == pytest.approx(record.C0 / EPSILON + 1.0)


class TestAssumptionScan:
    """Test the field-side decay scan."""

    def test_scan_layout(self, minkowski_field, linear_scattering):
        """Test rows, thresholds and the consistency flag."""
        nu0, B0 = 0.75, 2.0
        table = assumption_scan(minkowski_field, linear_scattering, nu0, [4.0, 8.0, 16.0], B0)
        assert [row.t for row in table.rows] == [4.0, 8.0, 16.0]
        thresholds = {result.name: result.threshold for result in table.assumptions}
        assert thresholds["i"] == pytest.approx(-1.0 - nu0 * (1.0 + B0 * EPSILON))
        assert thresholds["ii"] == pytest.approx(-1.0 - (nu0 * B0 + 1.0) * EPSILON)
        assert thresholds["iii"] == pytest.approx(-1.0 - B0 * EPSILON)
        satisfied = any(result.status == ScanStatus.SATISFIED for result in table.assumptions)
        assert table.consistent_with_nonzero == (not satisfied)

    def test_invalid_time_beyond_field(self, minkowski_field, linear_scattering):
        """Test sample times outside the field grid."""
        with pytest.raises(FieldRangeError):
            assumption_scan(minkowski_field, linear_scattering, 0.75, [4.0, 30.0], 2.0)
