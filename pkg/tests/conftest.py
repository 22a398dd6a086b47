#!/usr/bin/env python3
"""
Pytest configuration and shared fixtures for the wnc-scatter test suite.

This module provides the metrics, data, small simulated fields and
scattering data shared by the test modules.
"""

import math
import sys

import numpy as np
import pytest

# Add src to path for all tests
sys.path.insert(0, '.')

from src.models import EikonalRegion, ExperimentConfig, InitialData, MetricModel
from src.reduced_system import GridFunction1D, ScatteringData
from src.wave_solver import exact_linear_radiation_field, simulate_radial
from src.artifacts import ArtifactStore


# ================================
# Test Configuration
# ================================

EPSILON = 0.1
DELTA = 0.05
R = 1.0

# small but complete runs: at kappa = 1/2 every label down to q = -2 launches before t = 10
SMALL_T_MAX = 24.0
SMALL_DR = 0.02
SMALL_CFL = 0.9


# ================================
# Metric and Data Fixtures
# ================================

@pytest.fixture
def minkowski() -> MetricModel:
    """Flat metric c = 1."""
    return MetricModel.minkowski()


@pytest.fixture
def nonlinear_metric() -> MetricModel:
    """Radial metric c(u) = 1 + u, which violates the null condition."""
    return MetricModel.radial_model([1.0, 1.0])


@pytest.fixture
def bump() -> InitialData:
    """Standard bump u0 = exp(-1/(1 - r^2)), u1 = 0."""
    return InitialData.standard_bump(amplitude=1.0, R=R)


@pytest.fixture
def region() -> EikonalRegion:
    """Default eikonal region for eps = 0.1, delta = 0.05."""
    return EikonalRegion(delta=DELTA, epsilon=EPSILON, R=R)


# ================================
# Field Fixtures
# ================================

@pytest.fixture(scope="session")
def minkowski_field():
    """Coarse Minkowski run shared by the solver, tracer and interior tests."""
    return simulate_radial(
        MetricModel.minkowski(), InitialData.standard_bump(R=R), EPSILON, SMALL_T_MAX, SMALL_DR, SMALL_CFL
    )


@pytest.fixture(scope="session")
def nonlinear_field():
    """Coarse run of c(u) = 1 + u."""
    return simulate_radial(
        MetricModel.radial_model([1.0, 1.0]), InitialData.standard_bump(R=R), EPSILON, SMALL_T_MAX, SMALL_DR,
        SMALL_CFL,
    )


# ================================
# Scattering Data Fixtures
# ================================

@pytest.fixture(scope="session")
def linear_scattering() -> ScatteringData:
    """Exact Minkowski scattering data Ahat_lin of the standard bump on a fine grid."""
    data = InitialData.standard_bump(R=R)
    q = np.linspace(-4.0, R, 1001)
    a_hat = GridFunction1D.from_callable(
        q, lambda x: exact_linear_radiation_field(data, x), tail_exponent=-math.inf, support_radius=R
    )
    return ScatteringData.from_a_hat(a_hat, EPSILON, DELTA, R)


@pytest.fixture(scope="session")
def zero_scattering() -> ScatteringData:
    """Scattering data of the zero solution."""
    q = np.linspace(-4.0, R, 101)
    a_hat = GridFunction1D.constant(q, 0.0)
    return ScatteringData.from_a_hat(a_hat, EPSILON, DELTA, R)


# ================================
# Workspace Fixtures
# ================================

@pytest.fixture
def store(tmp_path) -> ArtifactStore:
    """Empty artifact store in a temporary directory."""
    return ArtifactStore(tmp_path / "out")


@pytest.fixture
def small_experiment(tmp_path) -> ExperimentConfig:
    """Minkowski experiment small enough for end-to-end command tests."""
    return ExperimentConfig(
        numbers={
            "epsilon": EPSILON,
            "delta": DELTA,
            "t_max": SMALL_T_MAX,
            "dr": SMALL_DR,
            "q_step": 0.1,
            "q_min": -2.0,
            "trace_dt": 0.1,
            "t_verify": 6.0,
            "sphere_degree": 8,
            "radial_nodes": 16,
        },
        io={"out_dir": str(tmp_path / "run")},
    )


@pytest.fixture
def experiment_file(tmp_path):
    """Factory writing an experiment file and returning its path."""
    def write(lines):
        path = tmp_path / "experiment.env"
        path.write_text("\n".join(lines) + "\n")
        return path
    return write


# ================================
# Test Environment Configuration
# ================================

def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers based on test names."""
    for item in items:
        if "integration" in item.name.lower() or "pipeline" in item.name.lower():
            item.add_marker(pytest.mark.integration)
