"""
Grid-refinement study of the radial solver.

On the Minkowski metric every level is compared with the d'Alembert
solution; otherwise neighbouring levels are compared with each other.
"""

import logging
import math
from typing import List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from ..models.initial_data import InitialData
from ..models.metric import MetricModel
from .field import RadialField
from .oracle import dalembert_v
from .solver import simulate_radial

logger = logging.getLogger(__name__)

LEVELS = 3
ORDER_WINDOW = (3.0, 5.0)
CONVERGENCE_COLUMNS = ["level", "dr", "reference", "error", "ratio"]


class ConvergenceRow(BaseModel):
    level: int = Field(..., description="0 is the finest grid")
    dr: float
    reference: str = Field(..., description="'oracle' or 'self'")
    error: float = Field(..., description="Max-norm error of v = r u at t_max")
    ratio: Optional[float] = Field(default=None, description="Error of the next coarser level over this one")


def _final_level(field: RadialField, stride: int) -> np.ndarray:
    return field.v[-1][::stride]


def convergence_table(
    metric: MetricModel,
    data: InitialData,
    epsilon: float,
    t_max: float,
    dr: float,
    cfl: float,
    fine: Optional[RadialField] = None,
) -> List[ConvergenceRow]:
    """
    Max-norm errors of v at t_max on grids dr, 2 dr and 4 dr.

    Args:
        metric: Radial metric
        data: Initial data
        epsilon: Amplitude
        t_max: Final time
        dr: Finest spacing
        cfl: Courant number
        fine: Already computed run at spacing dr

    Returns:
        List[ConvergenceRow]: One row per level (oracle) or per level pair (self)
    """
    fields = [fine if fine is not None else simulate_radial(metric, data, epsilon, t_max, dr, cfl)]
    for k in range(1, LEVELS):
        fields.append(simulate_radial(metric, data, epsilon, t_max, dr * 2 ** k, cfl))

    rows: List[ConvergenceRow] = []
    if metric.is_minkowski:
        for k, field in enumerate(fields):
            exact = dalembert_v(data, epsilon, t_max, field.r_grid)
            rows.append(ConvergenceRow(
                level=k, dr=field.dr, reference="oracle", error=float(np.max(np.abs(field.v[-1] - exact)))
            ))
    else:
        # compare each level with the next finer one on the coarse nodes
        for k in range(1, LEVELS):
            coarse = fields[k].v[-1]
            finer = _final_level(fields[k - 1], 2)
            n = min(len(coarse), len(finer))
            rows.append(ConvergenceRow(
                level=k - 1, dr=fields[k - 1].dr, reference="self",
                error=float(np.max(np.abs(coarse[:n] - finer[:n]))),
            ))

    for row, coarser in zip(rows, rows[1:]):
        if row.error > 0.0:
            row.ratio = coarser.error / row.error
    for row in rows:
        logger.info(f"Convergence level {row.level} (dr = {row.dr:g}, {row.reference}): error {row.error:.3e}")
    return rows


def observed_ratios(rows: List[ConvergenceRow]) -> List[float]:
    return [row.ratio for row in rows if row.ratio is not None and math.isfinite(row.ratio)]


def second_order(rows: List[ConvergenceRow]) -> bool:
    """True if every observed ratio lies in [3, 5] or the errors sit at round-off."""
    if all(row.error <= 1e-13 for row in rows):
        return True
    ratios = observed_ratios(rows)
    return bool(ratios) and all(ORDER_WINDOW[0] <= r <= ORDER_WINDOW[1] for r in ratios)


def convergence_frame(rows: List[ConvergenceRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=CONVERGENCE_COLUMNS)
