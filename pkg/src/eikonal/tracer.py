"""
Outgoing characteristics of the radial eikonal equation.

With q_t = -sqrt(c(u)) q_r the level sets of q move with dr/dt = sqrt(c)
and ln q_r obeys d(ln q_r)/dt = -c'(u) u_r / (2 sqrt(c)). All traces of a
batch are advanced together by RK4 and sampled on the shared grid
t_k = k * sample_dt, so traces launched at different times still meet at
identical sample times.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..errors import CausticError, FieldRangeError, InputDomainError, SpeedDegeneracyError
from ..models.region import EikonalRegion
from ..parallel import parallel_map
from ..wave_solver.field import RadialField

logger = logging.getLogger(__name__)

Q_R_MAX = 1e3
CHUNK_SIZE = 64
TRACE_COLUMNS = ["q_label", "t", "r", "q_r", "mu", "U"]
_GRID_EPS = 1e-9


@dataclass(frozen=True)
class LaunchPoint:
    """Point where a characteristic leaves the region boundary."""
    t: float
    r: float
    q_r: float


@dataclass(frozen=True, eq=False)
class CharacteristicTrace:
    """
    Samples of one characteristic q = q_label.

    Attributes:
        q_label: Constant value of q on the curve
        t: Sample times on the grid k * sample_dt
        r: Radius of the curve
        q_r: Radial derivative of q
        mu: q_t - q_r = -(1 + sqrt(c)) q_r
        U: r u / eps
        launch: Boundary point the trace started from
        sample_dt: Spacing of the sample grid
    """

    q_label: float
    t: np.ndarray
    r: np.ndarray
    q_r: np.ndarray
    mu: np.ndarray
    U: np.ndarray
    launch: LaunchPoint
    sample_dt: float

    def __len__(self) -> int:
        return len(self.t)

    @property
    def sample_index(self) -> np.ndarray:
        """Integer positions k of the samples on the shared grid."""
        return np.rint(self.t / self.sample_dt).astype(np.int64)

    @property
    def t_end(self) -> float:
        return float(self.t[-1]) if len(self.t) else self.launch.t


# ================================
# Launch schedule
# ================================

def label_schedule(q_min: float, R: float, q_step: float) -> np.ndarray:
    """
    Uniform labels over [q_min, R] with spacing at most q_step.

    Raises:
        InputDomainError: If the range is empty or the step is not positive
    """
    if q_step <= 0.0:
        raise InputDomainError(f"q_step must be positive, got {q_step}")
    if q_min >= R:
        raise InputDomainError(f"q_min = {q_min} must be below R = {R}")
    n = int(math.ceil((R - q_min) / q_step - _GRID_EPS)) + 1
    return np.linspace(q_min, R, max(n, 3))


def launch_times(region: EikonalRegion, labels: np.ndarray) -> np.ndarray:
    """Times where the labels meet the region boundary, not before e^{delta/eps}."""
    raw = np.array([region.launch_time(float(q)) for q in labels])
    return np.maximum(raw, region.start_time)


def _launch_q_r(region: EikonalRegion, t0: np.ndarray, speed: np.ndarray) -> np.ndarray:
    # q = r - t on the cone r = kappa (t + E) + 2R and on the face t = E
    on_cone = t0 > region.start_time
    denominator = speed - region.kappa
    if np.any(on_cone & (denominator <= 0.0)):
        bad = float(np.min(speed[on_cone]))
        raise SpeedDegeneracyError(
            f"sqrt(c) = {bad} does not exceed the cone slope {region.kappa} at launch"
        )
    safe = np.where(on_cone, denominator, 1.0)
    return np.where(on_cone, (1.0 - region.kappa) / safe, 1.0)


# ================================
# Integration
# ================================

def _speed(field: RadialField, t: float, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    u = field.sample(t, r, "u")
    c = field.metric.speed_squared(u)
    if np.any(c <= 0.0):
        raise SpeedDegeneracyError(f"c(u) = {float(np.min(c))} <= 0 on a characteristic at t = {t}")
    return np.sqrt(c), np.asarray(u)


def _rhs(field: RadialField, t, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    t_arr = np.broadcast_to(np.asarray(t, dtype=float), r.shape)
    u = np.asarray(field.sample(t_arr, r, "u"))
    u_r = np.asarray(field.sample(t_arr, r, "u_r"))
    c = field.metric.speed_squared(u)
    if np.any(c <= 0.0):
        raise SpeedDegeneracyError(f"c(u) = {float(np.min(c))} <= 0 on a characteristic")
    speed = np.sqrt(c)
    return speed, -field.metric.speed_squared_derivative(u) * u_r / (2.0 * speed)


def _rk4(field: RadialField, t, r: np.ndarray, log_q_r: np.ndarray, h) -> Tuple[np.ndarray, np.ndarray]:
    k1r, k1q = _rhs(field, t, r)
    k2r, k2q = _rhs(field, t + 0.5 * h, r + 0.5 * h * k1r)
    k3r, k3q = _rhs(field, t + 0.5 * h, r + 0.5 * h * k2r)
    k4r, k4q = _rhs(field, t + h, r + h * k3r)
    r_next = r + h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
    q_next = log_q_r + h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
    return r_next, q_next


def _check_caustic(labels: np.ndarray, log_q_r: np.ndarray, q_r_max: float, t: float) -> None:
    bad = ~np.isfinite(log_q_r) | (log_q_r > math.log(q_r_max)) | (log_q_r < -math.log(q_r_max))
    if np.any(bad):
        q = float(labels[np.flatnonzero(bad)[0]])
        raise CausticError(f"q_r left (0, {q_r_max}) on characteristic q = {q} near t = {t:.6g}")


def _march(
    field: RadialField,
    region: EikonalRegion,
    labels: np.ndarray,
    t0: np.ndarray,
    sample_dt: float,
    substeps: int,
    q_r_max: float,
) -> List[CharacteristicTrace]:
    """Advance one batch of characteristics from their launch points."""
    n = len(labels)
    r0 = labels + t0
    if not np.all(field.contains(t0, r0)):
        raise FieldRangeError(f"launch points outside the field grid (t_max = {field.t_max}, r_max = {field.r_max})")

    speed0, _ = _speed(field, t0, r0)
    q_r0 = _launch_q_r(region, t0, speed0)
    launches = [LaunchPoint(float(a), float(b), float(c)) for a, b, c in zip(t0, r0, q_r0)]

    k_first = np.ceil(t0 / sample_dt - _GRID_EPS).astype(np.int64)
    k_end = int(math.floor(field.t_max / sample_dt + _GRID_EPS))
    if np.any(k_first > k_end):
        raise FieldRangeError(f"characteristics launched after the field horizon t_max = {field.t_max}")

    # bring every trace to its first grid time
    r = r0.copy()
    log_q_r = np.log(q_r0)
    gap = k_first * sample_dt - t0
    h = gap / substeps
    for j in range(substeps):
        r, log_q_r = _rk4(field, t0 + j * h, r, log_q_r, h)
    _check_caustic(labels, log_q_r, q_r_max, float(np.max(t0)))

    k_lo = int(np.min(k_first))
    n_times = k_end - k_lo + 1
    r_table = np.full((n, n_times), np.nan)
    lq_table = np.full((n, n_times), np.nan)
    alive = np.ones(n, dtype=bool)
    h = sample_dt / substeps

    for k in range(k_lo, k_end + 1):
        col = k - k_lo
        t_k = k * sample_dt
        started = k_first <= k
        current = started & alive
        r_table[current, col] = r[current]
        lq_table[current, col] = log_q_r[current]
        if k == k_end or not np.any(current):
            continue
        speed, _ = _speed(field, t_k, r[current])
        leaving = ~field.contains(t_k + sample_dt, r[current] + 1.5 * sample_dt * speed)
        if np.any(leaving):
            idx = np.flatnonzero(current)[leaving]
            alive[idx] = False
            current[idx] = False
            logger.debug(f"{len(idx)} characteristics reached the field boundary at t = {t_k:.6g}")
        r_step, q_step = r[current], log_q_r[current]
        for j in range(substeps):
            r_step, q_step = _rk4(field, t_k + j * h, r_step, q_step, h)
        r[current], log_q_r[current] = r_step, q_step
        _check_caustic(labels[current], log_q_r[current], q_r_max, t_k + sample_dt)

    traces = []
    times = (k_lo + np.arange(n_times)) * sample_dt
    for i in range(n):
        keep = np.isfinite(r_table[i])
        t_i, r_i = times[keep], r_table[i, keep]
        q_r_i = np.exp(lq_table[i, keep])
        speed_i = np.sqrt(field.metric.speed_squared(field.sample(t_i, r_i, "u")))
        traces.append(CharacteristicTrace(
            q_label=float(labels[i]),
            t=t_i,
            r=r_i,
            q_r=q_r_i,
            mu=-(1.0 + speed_i) * q_r_i,
            U=np.asarray(field.sample(t_i, r_i, "v")) / field.epsilon,
            launch=launches[i],
            sample_dt=sample_dt,
        ))
    return traces


def trace_batch(
    field: RadialField,
    region: EikonalRegion,
    labels: Sequence[float],
    sample_dt: float = 0.05,
    substeps: int = 2,
    q_r_max: float = Q_R_MAX,
) -> List[CharacteristicTrace]:
    """
    Trace the characteristics q = label for every label.

    Args:
        field: Simulated field
        region: Region whose boundary carries q = r - t
        labels: Values of q, one trace each
        sample_dt: Spacing of the shared sample grid
        substeps: RK4 steps per sample interval
        q_r_max: Upper bound on q_r before a caustic is signalled

    Returns:
        List[CharacteristicTrace]: Traces in label order

    Raises:
        CausticError: If q_r leaves (0, q_r_max)
        SpeedDegeneracyError: If sqrt(c) <= kappa at launch or c <= 0 on a curve
        FieldRangeError: If a launch point is outside the field grid
    """
    if sample_dt <= 0.0 or substeps < 1:
        raise InputDomainError(f"sample_dt must be positive and substeps >= 1, got {sample_dt}, {substeps}")
    labels = np.asarray(labels, dtype=float)
    t0 = launch_times(region, labels)
    chunks = [slice(i, i + CHUNK_SIZE) for i in range(0, len(labels), CHUNK_SIZE)]
    logger.info(f"Tracing {len(labels)} characteristics (kappa = {region.kappa}, delta = {region.delta})")
    batches = parallel_map(
        lambda s: _march(field, region, labels[s], t0[s], sample_dt, substeps, q_r_max), chunks
    )
    return [trace for batch in batches for trace in batch]


def trace_characteristic(
    field: RadialField,
    region: EikonalRegion,
    launch_t: float,
    sample_dt: float = 0.05,
    substeps: int = 2,
    q_r_max: float = Q_R_MAX,
) -> CharacteristicTrace:
    """
    Trace the characteristic leaving the cone boundary at time launch_t.

    Args:
        field: Simulated field
        region: Eikonal region
        launch_t: Launch time, at least e^{delta/eps}

    Returns:
        CharacteristicTrace: The trace, labelled q = r - t at launch
    """
    if launch_t < region.start_time:
        raise InputDomainError(f"launch time {launch_t} precedes the region start {region.start_time}")
    label = region.boundary_radius(launch_t) - launch_t
    return _march(
        field, region, np.array([label]), np.array([float(launch_t)]), sample_dt, substeps, q_r_max
    )[0]


# ================================
# Diagnostics and export
# ================================

def label_consistency_residual(traces: Sequence[CharacteristicTrace], time_index: Optional[int] = None) -> float:
    """
    Compare label gaps with the integral of q_r between adjacent traces.

    At a shared sample time the difference of two labels must equal the
    integral of q_r over the radial gap between the curves; the trapezoid
    estimate of that integral is checked against the labels.

    Args:
        traces: Traces in label order
        time_index: Shared sample index (defaults to the last common one)

    Returns:
        float: Largest relative mismatch over adjacent pairs
    """
    if len(traces) < 2:
        return 0.0
    common = set(traces[0].sample_index.tolist())
    for trace in traces[1:]:
        common &= set(trace.sample_index.tolist())
    if not common:
        return math.inf
    k = max(common) if time_index is None else time_index
    worst = 0.0
    for a, b in zip(traces[:-1], traces[1:]):
        ia = int(np.flatnonzero(a.sample_index == k)[0])
        ib = int(np.flatnonzero(b.sample_index == k)[0])
        gap = b.q_label - a.q_label
        integral = 0.5 * (a.q_r[ia] + b.q_r[ib]) * (b.r[ib] - a.r[ia])
        worst = max(worst, abs(integral - gap) / abs(gap))
    return worst


def traces_to_frame(traces: Sequence[CharacteristicTrace]) -> pd.DataFrame:
    """Long table with header q_label,t,r,q_r,mu,U."""
    frames = [
        pd.DataFrame({
            "q_label": np.full(len(tr), tr.q_label),
            "t": tr.t,
            "r": tr.r,
            "q_r": tr.q_r,
            "mu": tr.mu,
            "U": tr.U,
        }, columns=TRACE_COLUMNS)
        for tr in traces
    ]
    if not frames:
        return pd.DataFrame(columns=TRACE_COLUMNS)
    return pd.concat(frames, ignore_index=True)
