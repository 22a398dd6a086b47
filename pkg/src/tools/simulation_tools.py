#!/usr/bin/env python3
"""
Simulation command.

Runs the radial solver on the configured metric and data, stores the
field snapshot and selected time slices, and records a grid-refinement
table: against the d'Alembert solution for the Minkowski metric, between
neighbouring grids otherwise.
"""

import logging
from typing import Any, Dict, List

from ..artifacts import save_field, slices_frame
from ..wave_solver import convergence_frame, convergence_table, second_order, simulate_radial
from .context import RunContext

logger = logging.getLogger(__name__)

CFL_WARNING = 0.95


# ================================
# simulate
# ================================

def run_simulate(ctx: RunContext) -> Dict[str, Any]:
    """
    Simulate the radial field and write field.bin, slices.csv and convergence.csv.

    Args:
        ctx: Run context

    Returns:
        Dict[str, Any]: Content of simulate_summary.json

    Raises:
        ConfigurationError: For invalid numbers or a non-radial metric
        CFLViolationError: If the run leaves the stable regime
        SpeedDegeneracyError: If c(u) <= 0 somewhere
    """
    experiment = ctx.experiment
    n = experiment.numbers
    field = simulate_radial(
        experiment.metric,
        experiment.data,
        n.epsilon,
        n.t_max,
        n.dr,
        n.cfl,
        snapshot_stride=experiment.io.snapshot_stride,
    )
    warnings: List[str] = []
    if field.cfl_max > CFL_WARNING:
        message = f"lambda * sqrt(c) reached {field.cfl_max:.4f}, close to the stability limit"
        logger.warning(message)
        warnings.append(message)

    save_field(ctx.store, "field.bin", field)
    slice_times = experiment.io.slice_times or [0.5 * n.t_max, n.t_max]
    ctx.store.write_frame("slices.csv", slices_frame(field, slice_times))

    rows = convergence_table(experiment.metric, experiment.data, n.epsilon, n.t_max, n.dr, n.cfl, fine=field)
    ctx.store.write_frame("convergence.csv", convergence_frame(rows))
    converged = second_order(rows)
    if not converged:
        message = "refinement ratios outside [3, 5]; the grid is not in the asymptotic regime"
        logger.warning(message)
        warnings.append(message)

    summary = ctx.summary(
        "simulate",
        converged,
        warnings,
        n_t=int(len(field.t_grid)),
        n_r=int(len(field.r_grid)),
        dt=field.dt,
        dr=field.dr,
        t_max=field.t_max,
        cfl_max=field.cfl_max,
        reference=rows[0].reference,
        errors=[row.error for row in rows],
        ratios=[row.ratio for row in rows if row.ratio is not None],
    )
    ctx.store.write_json("simulate_summary.json", summary)
    return summary
