"""
Leapfrog solver for the radial quasilinear wave equation.

With g^{00} = -1, g^{0i} = 0 and g^{ij} = c(u) delta^{ij}, the substitution
v = r u turns the equation into v_tt = c(v / r) v_rr on r > 0 with v = 0 at
r = 0. The outer boundary sits at r_max = t_max + R + 2 dr and is never
reached by the solution.
"""

import logging
import math
from typing import Tuple

import numpy as np

from ..errors import CFLViolationError, ConfigurationError, SpeedDegeneracyError
from ..models.initial_data import InitialData
from ..models.metric import MetricModel
from .field import RadialField

logger = logging.getLogger(__name__)

MAX_CFL = 0.95


def _speed_squared(metric: MetricModel, v: np.ndarray, r: np.ndarray) -> np.ndarray:
    """c(v / r) on interior nodes r[1:-1]."""
    return metric.speed_squared(v[1:-1] / r[1:-1])


def leapfrog_step(
    v_prev: np.ndarray, v_curr: np.ndarray, r: np.ndarray, lam2: float, metric: MetricModel
) -> Tuple[np.ndarray, float]:
    """
    One leapfrog update v^{n+1} = 2v^n - v^{n-1} + lam^2 c(u^n) D^2 v^n.

    Args:
        v_prev: Level n-1
        v_curr: Level n
        r: Radial nodes
        lam2: (dt / dr)^2
        metric: Radial metric

    Returns:
        Tuple[np.ndarray, float]: Level n+1 and the largest c on this level

    Raises:
        SpeedDegeneracyError: If c(u) <= 0 at some node
    """
    c = _speed_squared(metric, v_curr, r)
    c_max = float(np.max(c)) if len(c) else 1.0
    if len(c) and float(np.min(c)) <= 0.0:
        j = int(np.argmin(c)) + 1
        raise SpeedDegeneracyError(f"c(u) = {float(c[j - 1])!r} <= 0 at r = {float(r[j])!r}")
    v_next = np.zeros_like(v_curr)
    v_next[1:-1] = (
        2.0 * v_curr[1:-1] - v_prev[1:-1]
        + lam2 * c * (v_curr[2:] - 2.0 * v_curr[1:-1] + v_curr[:-2])
    )
    return v_next, c_max


def simulate_radial(
    metric: MetricModel,
    data: InitialData,
    epsilon: float,
    t_max: float,
    dr: float,
    cfl: float,
    snapshot_stride: int = 1,
) -> RadialField:
    """
    Run the leapfrog scheme from (eps u0, eps u1) up to t_max.

    Args:
        metric: Radial metric
        data: Initial data
        epsilon: Data amplitude
        t_max: Final time
        dr: Radial spacing
        cfl: Courant number, at most 0.95
        snapshot_stride: Keep every stride-th time level

    Returns:
        RadialField: Stored time levels

    Raises:
        ConfigurationError: For non-radial metrics or invalid numbers
        CFLViolationError: If lambda * sqrt(c) exceeds 1 during the run
        SpeedDegeneracyError: If c(u) <= 0 at some node
    """
    if not metric.radial:
        raise ConfigurationError("the radial solver needs a radial metric")
    if not 0.0 < cfl <= MAX_CFL:
        raise ConfigurationError(f"cfl must lie in (0, {MAX_CFL}], got {cfl}")
    if dr <= 0.0 or t_max <= 0.0 or epsilon < 0.0:
        raise ConfigurationError(f"need dr > 0, t_max > 0, epsilon >= 0 (got {dr}, {t_max}, {epsilon})")
    if snapshot_stride < 1:
        raise ConfigurationError(f"snapshot stride must be >= 1, got {snapshot_stride}")

    R = data.R
    n_r = int(math.ceil((t_max + R + 2.0 * dr) / dr)) + 1
    r = np.arange(n_r) * dr
    u_initial = epsilon * data.u0_value(r)
    c_initial = metric.speed_squared(u_initial)
    if float(np.min(c_initial)) <= 0.0:
        raise SpeedDegeneracyError("c(u) <= 0 already for the initial data")
    c_bound = max(1.0, float(np.max(c_initial)))
    dt_target = cfl * dr / math.sqrt(c_bound)
    n_steps = snapshot_stride * int(math.ceil(t_max / (dt_target * snapshot_stride)))
    dt = t_max / n_steps
    lam2 = (dt / dr) ** 2
    logger.info(
        f"Simulating radial field: {n_r} nodes, {n_steps} steps, dt = {dt:.3e}, "
        f"eps = {epsilon}, metric = {metric}"
    )

    v_prev = epsilon * r * data.u0_value(r)
    v_prev[0] = 0.0
    v1 = epsilon * r * data.u1_value(r)
    c0 = _speed_squared(metric, v_prev, r)
    v_curr = np.zeros_like(v_prev)
    v_curr[1:-1] = (
        v_prev[1:-1] + dt * v1[1:-1]
        + 0.5 * lam2 * c0 * (v_prev[2:] - 2.0 * v_prev[1:-1] + v_prev[:-2])
    )

    n_stored = n_steps // snapshot_stride + 1
    stored = np.empty((n_stored, n_r))
    stored[0] = v_prev
    if snapshot_stride == 1:
        stored[1] = v_curr
    cfl_max = math.sqrt(lam2 * max(1.0, float(np.max(c0))))

    for n in range(1, n_steps):
        v_next, c_max = leapfrog_step(v_prev, v_curr, r, lam2, metric)
        ratio = math.sqrt(lam2 * c_max)
        if ratio > cfl_max:
            cfl_max = ratio
            if ratio > 1.0:
                raise CFLViolationError(
                    f"lambda * sqrt(c) = {ratio:.4f} > 1 at t = {n * dt:.4f}; lower cfl"
                )
        v_prev, v_curr = v_curr, v_next
        if (n + 1) % snapshot_stride == 0:
            stored[(n + 1) // snapshot_stride] = v_curr

    logger.info(f"Simulation finished, max lambda*sqrt(c) = {cfl_max:.4f}")
    t_grid = np.arange(n_stored) * (dt * snapshot_stride)
    t_grid[-1] = t_max
    return RadialField(
        t_grid=t_grid,
        r_grid=r,
        v=stored,
        dt=dt * snapshot_stride,
        dr=dr,
        epsilon=epsilon,
        R=R,
        metric=metric,
        cfl_max=cfl_max,
        step_dt=dt,
    )
