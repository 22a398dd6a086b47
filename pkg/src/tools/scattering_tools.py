#!/usr/bin/env python3
"""
Scattering commands.

This module provides the commands built on the extracted scattering data:
scatter (trace, extract, gauge check), decay (spherical means) and
classify (vanishing hypotheses).
"""

import logging
import math
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from ..eikonal import (
    gauge_independence_check,
    label_consistency_residual,
    label_schedule,
    radial_G,
    run_extraction,
    traces_to_frame,
)
from ..geometry.quadrature import sphere_rule
from ..interior import classify_vanishing, dyadic_times, spherical_means_decay
from ..reduced_system.profiles import profile_bounds
from ..reduced_system.recursion import compatibility_residual
from ..wave_solver.oracle import exact_linear_radiation_field
from .context import RunContext, load_scattering, load_snapshot

logger = logging.getLogger(__name__)

ORACLE_WINDOW = (-1.0, 1.0)


# ================================
# scatter
# ================================

def run_scatter(ctx: RunContext) -> Dict[str, Any]:
    """
    Trace characteristics through field.bin and extract the scattering data.

    Writes scattering.csv, scattering.json, traces.csv and gauge_check.json.

    Args:
        ctx: Run context

    Returns:
        Dict[str, Any]: Content of scatter_summary.json

    Raises:
        FieldRangeError: If a launch point lies outside the stored grid
        CausticError: If q_r leaves its admissible range or traces cross
        ExtractionError: If too few traces share a sample time
    """
    n = ctx.experiment.numbers
    field = load_snapshot(ctx)
    region = ctx.region
    if field.R != region.R or field.epsilon != region.epsilon:
        logger.warning(
            f"field.bin was simulated with eps = {field.epsilon}, R = {field.R}; "
            f"the configuration says eps = {region.epsilon}, R = {region.R}"
        )
    G = radial_G(field.metric)
    labels = label_schedule(n.label_floor, region.R, n.q_step)
    logger.info(f"Tracing {len(labels)} characteristics, q in [{labels[0]:.4g}, {labels[-1]:.4g}]")

    sd, traces = run_extraction(field, region, labels, G, sample_dt=n.trace_dt, substeps=n.trace_substeps)
    ctx.store.write_frame("scattering.csv", sd.to_frame())
    ctx.store.write_json("scattering.json", sd.sidecar())
    ctx.store.write_frame("traces.csv", traces_to_frame(traces))

    delta_b = n.delta_alt if n.delta_alt is not None else n.delta
    gauge = gauge_independence_check(field, field.metric, n.delta, delta_b, n, reference=sd)
    ctx.store.write_json("gauge_check.json", gauge.to_dict())

    t_end = min(tr.t_end for tr in traces)
    s_end = float(region.slow_time(t_end))
    warnings: List[str] = list(sd.warnings) + list(gauge.warnings)
    fields: Dict[str, Any] = {
        "n_traces": len(traces),
        "q_min": float(sd.q_grid[0]),
        "q_max": float(sd.q_grid[-1]),
        "t_end": t_end,
        "s_end": s_end,
        "G": G,
        "max_abs_a_hat": sd.max_abs_a_hat,
        "a1_min": float(np.min(sd.a1.values)),
        "a1_max": float(np.max(sd.a1.values)),
        "a1_in_range": sd.a1_in_range(),
        "tail_exponent": sd.a_hat.tail_exponent,
        "label_consistency": label_consistency_residual(traces),
        "compatibility_residual": compatibility_residual(sd, G),
        "profile_bounds": profile_bounds(sd, G, s_end),
        "gauge_passed": gauge.passed,
        "gauge_relative_difference": gauge.relative_difference,
    }
    if field.metric.is_minkowski:
        q = sd.q_grid
        window = (q >= ORACLE_WINDOW[0]) & (q <= ORACLE_WINDOW[1])
        if np.any(window):
            exact = exact_linear_radiation_field(ctx.experiment.data, q[window])
            fields["oracle_max_error"] = float(np.max(np.abs(sd.a_hat.values[window] - exact)))
            logger.info(f"Max |Ahat - Ahat_lin| on {ORACLE_WINDOW}: {fields['oracle_max_error']:.3e}")

    summary = ctx.summary("scatter", gauge.passed and sd.a1_in_range(), warnings, **fields)
    ctx.store.write_json("scatter_summary.json", summary)
    return summary


# ================================
# decay
# ================================

def run_decay(ctx: RunContext) -> Dict[str, Any]:
    """
    Sample the spherical means M(t) on dyadic times from 2 e^{delta/eps} to t_max.

    Args:
        ctx: Run context

    Returns:
        Dict[str, Any]: Content of decay_summary.json
    """
    sd = load_scattering(ctx)
    G = radial_G(ctx.experiment.metric)
    t_start = 2.0 * math.exp(sd.delta / sd.epsilon)
    times = dyadic_times(t_start, max(ctx.experiment.numbers.t_max, t_start))
    table = spherical_means_decay(sd, G, times)
    decay_frame = pd.DataFrame([row.model_dump() for row in table.rows], columns=["t", "s", "M"])
    ctx.store.write_frame("decay.csv", decay_frame)

    warnings: List[str] = []
    if len(times) < 3:
        warnings.append(f"only {len(times)} dyadic samples; raise numbers.t_max for a meaningful fit")
    if -2.0 * times[-1] < sd.q_grid[0]:
        warnings.append(f"samples reach q = {-2.0 * times[-1]:.4g} below the grid; tail model used")
    summary = ctx.summary(
        "decay",
        table.passed,
        warnings,
        exponents={"M": table.fitted_exponent},
        tolerances={"M": table.threshold},
        n_samples=len(table.rows),
    )
    ctx.store.write_json("decay_summary.json", summary)
    return summary


# ================================
# classify
# ================================

def run_classify(ctx: RunContext) -> Dict[str, Any]:
    """
    Evaluate the vanishing hypotheses on the stored scattering data.

    classify.json is both the record and the command summary; it carries
    B0 for the assumption scan.

    Args:
        ctx: Run context

    Returns:
        Dict[str, Any]: Content of classify.json
    """
    sd = load_scattering(ctx)
    record = classify_vanishing(sd, ctx.experiment.metric, sphere_rule(ctx.experiment.numbers.sphere_degree))
    # passing means the data is consistent with a genuine solution
    consistent = record.null_condition or not record.certified or sd.max_abs_a_hat == 0.0
    fields = record.model_dump(mode="json")
    fields["classification"] = fields.pop("verdict")
    summary = ctx.summary("classify", consistent, list(sd.warnings), certified=record.certified, **fields)
    ctx.store.write_json("classify.json", summary)
    return summary
