"""
Vanishing criteria for scattering data and decay assumptions on the field.

When the null condition fails, each of the sign, integrability and fast
tail hypotheses on Ahat forces Ahat = 0; so do fast decay rates of u near
the light cone or on the axis. These checks measure the hypotheses on
numerical data and report what the criteria would conclude.
"""

import logging
from typing import List, Sequence

import numpy as np

from ..geometry.metric_ops import evaluate_G_nodes, null_condition_satisfied
from ..geometry.quadrature import SphereRule
from ..models.metric import MetricModel
from ..models.reports import (
    AssumptionResult,
    AssumptionScanTable,
    ClassificationRecord,
    HypothesisCheck,
    ScanRow,
    ScanStatus,
)
from ..reduced_system.fitting import fit_loglog_slope, fit_tail_exponent
from ..reduced_system.scattering import ScatteringData
from ..wave_solver.field import RadialField

logger = logging.getLogger(__name__)

SIGN_TOLERANCE = 1e-8
INTEGRABLE_EXPONENT = -1.0
B0_MARGIN = 1.0
SCAN_BAND = 0.3
D2_SAMPLES = 64


def _tail(sd: ScatteringData, values: np.ndarray) -> float:
    return fit_tail_exponent(sd.q_grid, values)


def classify_vanishing(sd: ScatteringData, metric: MetricModel, sphere: SphereRule) -> ClassificationRecord:
    """
    Evaluate the three vanishing hypotheses on Ahat.

    (a) Ahat has one sign; (b) G has one sign on the sphere and the part of
    Ahat with the opposite sign is integrable (tail exponent below -1);
    (c) Ahat decays faster than <q>^{-1 - B0 eps} with B0 = C0/eps + 1 and
    C0 = sup |G Ahat| / 2.

    Args:
        sd: Scattering data
        metric: Metric of the run
        sphere: Sphere rule whose nodes sample G

    Returns:
        ClassificationRecord: Flags, measured constants and verdict
    """
    a = sd.a_hat.values
    scale = float(np.max(np.abs(a))) if len(a) else 0.0
    tau = SIGN_TOLERANCE * scale
    null = null_condition_satisfied(metric)
    G = evaluate_G_nodes(metric, sphere.nodes)
    g_min, g_max = float(np.min(G)), float(np.max(G))

    sign_met = bool(np.min(a) >= -tau or np.max(a) <= tau)
    checks: List[HypothesisCheck] = [HypothesisCheck(
        name="a",
        met=sign_met,
        detail=f"min Ahat = {float(np.min(a)):.3e}, max Ahat = {float(np.max(a)):.3e}, tau = {tau:.3e}",
    )]

    negative_tail = _tail(sd, np.minimum(a, 0.0))
    positive_tail = _tail(sd, np.maximum(a, 0.0))
    b_lower = g_min >= 0.0 and negative_tail < INTEGRABLE_EXPONENT
    b_upper = g_max <= 0.0 and positive_tail < INTEGRABLE_EXPONENT
    checks.append(HypothesisCheck(
        name="b",
        met=bool(b_lower or b_upper),
        detail=(
            f"G in [{g_min:.3e}, {g_max:.3e}], tail of min(Ahat, 0) {negative_tail:.3f}, "
            f"tail of max(Ahat, 0) {positive_tail:.3f}"
        ),
        measured=negative_tail if g_min >= 0.0 else positive_tail,
        threshold=INTEGRABLE_EXPONENT,
    ))

    C0 = 0.5 * max(abs(g_min), abs(g_max)) * scale
    B0 = C0 / sd.epsilon + B0_MARGIN
    tail = _tail(sd, np.abs(a))
    c_threshold = -1.0 - B0 * sd.epsilon
    checks.append(HypothesisCheck(
        name="c",
        met=bool(tail < c_threshold),
        detail=f"C0 = {C0:.4g}, B0 = {B0:.4g}, tail exponent {tail:.3f} vs {c_threshold:.3f}",
        measured=tail,
        threshold=c_threshold,
    ))

    met = [c.name for c in checks if c.met]
    if scale == 0.0:
        verdict = "Ahat vanishes identically; the solution is zero"
    elif null:
        verdict = "theorem not applicable: the null condition holds (G = 0)"
    elif met:
        verdict = (
            f"hypothesis ({', '.join(met)}) met: the criteria imply Ahat = 0, "
            f"contradiction: input inconsistent with a true solution"
        )
    else:
        verdict = "no hypothesis met: consistent with a nonzero solution"
    logger.info(f"Vanishing classification: {verdict}")
    return ClassificationRecord(
        null_condition=null,
        tau=tau,
        C0=C0,
        B0=B0,
        tail_exponent=tail,
        hypotheses=checks,
        verdict=verdict,
    )


def _status(exponent: float, threshold: float) -> ScanStatus:
    if exponent < threshold - SCAN_BAND:
        return ScanStatus.SATISFIED
    if exponent > threshold + SCAN_BAND:
        return ScanStatus.VIOLATED
    return ScanStatus.INCONCLUSIVE


def assumption_scan(
    field: RadialField,
    sd: ScatteringData,
    nu0: float,
    t_samples: Sequence[float],
    B0: float,
    B1: float = 1.0,
) -> AssumptionScanTable:
    """
    Measure the decay rates named in the field-side vanishing assumptions.

    D1(t) = |(u_t - u_r)(t, t - t^nu0)|, D2(t) = max |u| over
    r in [t - 2 t^nu0, t - t^nu0 / 2], D3(t) = |u(t, 0)|. Fitted exponents
    are compared with -1 - nu0 (1 + B0 eps), -1 - (nu0 B0 + B1) eps and
    -1 - B0 eps within a band of 0.3.

    Args:
        field: Simulated field
        sd: Scattering data (supplies eps)
        nu0: Exponent in (0, 1)
        t_samples: Sample times inside the field grid
        B0: Constant from classify_vanishing
        B1: Second constant of the near-cone assumption

    Returns:
        AssumptionScanTable: Rows, per-assumption status and consistency flag

    Raises:
        FieldRangeError: If a sample lies outside the field grid
    """
    eps = sd.epsilon
    rows = []
    for t in sorted(t_samples):
        width = t ** nu0
        d1 = abs(float(field.sample(t, max(t - width, 0.0), "u_t") - field.sample(t, max(t - width, 0.0), "u_r")))
        radii = np.linspace(max(t - 2.0 * width, 0.0), max(t - 0.5 * width, 0.0), D2_SAMPLES)
        d2 = float(np.max(np.abs(field.sample(np.full_like(radii, t), radii, "u"))))
        d3 = abs(float(field.sample(t, 0.0, "u")))
        rows.append(ScanRow(t=t, D1=d1, D2=d2, D3=d3))

    times = [row.t for row in rows]
    thresholds = {
        "i": -1.0 - nu0 * (1.0 + B0 * eps),
        "ii": -1.0 - (nu0 * B0 + B1) * eps,
        "iii": -1.0 - B0 * eps,
    }
    series = {
        "i": [row.D1 for row in rows],
        "ii": [row.D2 for row in rows],
        "iii": [row.D3 for row in rows],
    }
    results = []
    for name, values in series.items():
        exponent, _ = fit_loglog_slope(times, values)
        results.append(AssumptionResult(
            name=name, exponent=exponent, threshold=thresholds[name], status=_status(exponent, thresholds[name])
        ))
    consistent = not any(r.status == ScanStatus.SATISFIED for r in results)
    logger.info(
        "Assumption scan exponents: "
        + ", ".join(f"{r.name} = {r.exponent:.3f} ({r.status.value})" for r in results)
    )
    return AssumptionScanTable(
        nu0=nu0, B0=B0, B1=B1, rows=rows, assumptions=results, consistent_with_nonzero=consistent
    )
