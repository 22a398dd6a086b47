"""
Limit extraction from traced characteristics.

At every shared sample time the product mu U_q equals -2A(s); A is taken at
the last shared time with one Richardson step against the shared time
nearest half of it, assuming the leading error decays like 1/t. A1 and
Ahat follow from the limits and the gauge map.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import CausticError, ExtractionError
from ..models.region import EikonalRegion
from ..reduced_system.fitting import fit_tail_exponent
from ..reduced_system.gauge import scattering_from_limits
from ..reduced_system.grid import GridFunction1D
from ..reduced_system.scattering import A1_LOWER, A1_UPPER, ScatteringData
from ..wave_solver.field import RadialField
from .tracer import CharacteristicTrace, trace_batch

logger = logging.getLogger(__name__)

A1_TOLERANCE = 0.1
MIN_TRACES = 3
DRIFT_TOLERANCE = 1e-8


def _common_table(traces: Sequence[CharacteristicTrace]) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Rows of (r, mu, U) per trace restricted to the shared sample times."""
    common = np.asarray(traces[0].sample_index)
    for trace in traces[1:]:
        common = np.intersect1d(common, trace.sample_index)
    if len(common) == 0:
        raise ExtractionError("traces do not share any sample time")
    r = np.empty((len(traces), len(common)))
    mu = np.empty_like(r)
    U = np.empty_like(r)
    for i, trace in enumerate(traces):
        positions = np.searchsorted(trace.sample_index, common)
        r[i], mu[i], U[i] = trace.r[positions], trace.mu[positions], trace.U[positions]
    return common * traces[0].sample_dt, r, mu, U


def _nearest(times: np.ndarray, target: float) -> int:
    return int(np.argmin(np.abs(times - target)))


def extract_limits(
    traces: Sequence[CharacteristicTrace],
    region: EikonalRegion,
    G_value: float,
) -> ScatteringData:
    """
    Extract A, A1, A2 and Ahat from a batch of traces.

    Args:
        traces: Traces sampled on one shared time grid
        region: Region the traces were launched from
        G_value: G for the radial metric

    Returns:
        ScatteringData: Limits and scattering data on the label grid

    Raises:
        ExtractionError: With fewer than three traces or no shared sample time
        CausticError: If two traces cross
    """
    if len(traces) < MIN_TRACES:
        raise ExtractionError(f"need at least {MIN_TRACES} traces, got {len(traces)}")
    if len({tr.sample_dt for tr in traces}) != 1:
        raise ExtractionError("traces were sampled with different time steps")
    traces = sorted(traces, key=lambda tr: tr.q_label)
    q = np.array([tr.q_label for tr in traces])
    if np.any(np.diff(q) <= 0.0):
        raise ExtractionError("trace labels must be distinct")

    times, r, mu, U = _common_table(traces)
    crossed = np.diff(r, axis=0) <= 0.0
    if np.any(crossed):
        i, k = np.argwhere(crossed)[0]
        raise CausticError(
            f"characteristics q = {q[i]} and q = {q[i + 1]} cross before t = {times[k]:.6g}"
        )

    U_q = np.gradient(U, q, axis=0, edge_order=2)
    a_of_t = -0.5 * mu * U_q
    warnings: List[str] = []

    k2 = len(times) - 1
    t2 = float(times[k2])
    k1 = _nearest(times, 0.5 * t2)
    if k1 == k2:
        a_limit = a_of_t[:, k2]
        warnings.append(f"single shared sample time t = {t2}; no Richardson step")
    else:
        t1 = float(times[k1])
        a_limit = (t2 * a_of_t[:, k2] - t1 * a_of_t[:, k1]) / (t2 - t1)

    # dyadic drift check: equal steps in s
    k_quarter, k_half = _nearest(times, 0.25 * t2), _nearest(times, 0.5 * t2)
    if len({k_quarter, k_half, k2}) == 3:
        late = np.max(np.abs(a_of_t[:, k2] - a_of_t[:, k_half]))
        early = np.max(np.abs(a_of_t[:, k_half] - a_of_t[:, k_quarter]))
        scale = float(np.max(np.abs(a_of_t[:, k2])))
        if late > early + DRIFT_TOLERANCE * max(scale, 1.0):
            message = f"mu U_q drift grew over the last dyadic interval ({late:.3e} > {early:.3e})"
            logger.warning(message)
            warnings.append(message)
    else:
        message = (
            f"drift check skipped: shared times start at t = {float(times[0]):.4g}, "
            f"no distinct samples near {0.25 * t2:.4g} and {0.5 * t2:.4g}"
        )
        logger.warning(message)
        warnings.append(message)

    s2 = float(region.slow_time(t2))
    a1_values = mu[:, k2] * np.exp(0.5 * G_value * a_limit * s2)
    outside = (a1_values < A1_LOWER - A1_TOLERANCE) | (a1_values > A1_UPPER + A1_TOLERANCE)
    if np.any(outside):
        message = (
            f"A1 outside [{A1_LOWER}, {A1_UPPER}] at {np.count_nonzero(outside)} labels "
            f"(range {float(np.min(a1_values)):.4f} .. {float(np.max(a1_values)):.4f})"
        )
        logger.warning(message)
        warnings.append(message)

    R = region.R
    a_values = np.where(q >= R, 0.0, a_limit)
    a_raw = GridFunction1D(q, a_values, tail_exponent=fit_tail_exponent(q, a_values), support_radius=R)
    a1 = GridFunction1D(q, a1_values, tail_exponent=0.0)
    a_hat = scattering_from_limits(a_raw, a1, R)
    logger.info(
        f"Extracted limits on {len(q)} labels at t = {t2:.4g} (s = {s2:.4g}); "
        f"max |Ahat| = {float(np.max(np.abs(a_hat.values))):.6g}"
    )
    return ScatteringData(
        a_hat=a_hat,
        a_raw=a_raw,
        a1=a1,
        epsilon=region.epsilon,
        delta=region.delta,
        R=R,
        warnings=tuple(warnings),
    )


def limit_history(traces: Sequence[CharacteristicTrace], region: EikonalRegion) -> Tuple[np.ndarray, np.ndarray]:
    """
    A(s) = -1/2 mu U_q at every shared sample time.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Slow times s_k and an array (labels, times)
    """
    traces = sorted(traces, key=lambda tr: tr.q_label)
    q = np.array([tr.q_label for tr in traces])
    times, _, mu, U = _common_table(traces)
    return region.slow_time(times), -0.5 * mu * np.gradient(U, q, axis=0, edge_order=2)


def run_extraction(
    field: RadialField,
    region: EikonalRegion,
    labels: Sequence[float],
    G_value: float,
    sample_dt: float = 0.05,
    substeps: int = 2,
) -> Tuple[ScatteringData, List[CharacteristicTrace]]:
    """
    Trace the given labels through the field and extract the limits.

    Returns:
        Tuple[ScatteringData, List[CharacteristicTrace]]: Scattering data and the traces used
    """
    traces = trace_batch(field, region, labels, sample_dt=sample_dt, substeps=substeps)
    return extract_limits(traces, region, G_value), traces
