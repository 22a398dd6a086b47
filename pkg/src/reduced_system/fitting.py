"""
Log-log slope fitting for decay exponents and profile tails.
"""

import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from .grid import japanese_bracket

logger = logging.getLogger(__name__)

NEGLIGIBLE_FRACTION = 1e-8


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """
    Least-squares slope of log|y| against log x.

    Points with |y| = 0 carry no slope information and are dropped; with at
    most one usable point the slope is reported as -inf (vanishing data).

    Args:
        x: Positive abscissae
        y: Samples

    Returns:
        Tuple[float, float]: (slope, RMS residual of the fit)
    """
    x = np.asarray(x, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    mask = (y > 0.0) & np.isfinite(y) & (x > 0.0)
    if np.count_nonzero(mask) <= 1:
        return -math.inf, 0.0
    lx, ly = np.log(x[mask]), np.log(y[mask])
    if np.ptp(lx) == 0.0:
        return 0.0, 0.0
    fit = linregress(lx, ly)
    residual = float(np.sqrt(np.mean((ly - (fit.intercept + fit.slope * lx)) ** 2)))
    return float(fit.slope), residual


def fit_tail_exponent(q_grid: np.ndarray, values: np.ndarray, fraction: float = 0.25) -> float:
    """
    Power-law exponent of |values| in <q> over the lowest part of the grid.

    Args:
        q_grid: Increasing nodes
        values: Profile values
        fraction: Share of the grid (from the bottom) used for the fit

    Returns:
        float: Exponent, -inf when the profile is negligible there
    """
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values))) if len(values) else 0.0
    if scale == 0.0:
        return -math.inf
    count = max(3, int(len(q_grid) * fraction))
    q_low = np.asarray(q_grid[:count], dtype=float)
    v_low = np.abs(values[:count])
    significant = v_low > NEGLIGIBLE_FRACTION * scale
    # tails only make sense on the q < 0 side
    significant &= q_low < 0.0
    if np.count_nonzero(significant) < 3:
        return -math.inf
    slope, _ = fit_loglog_slope(japanese_bracket(q_low[significant]), v_low[significant])
    logger.debug(f"Fitted tail exponent {slope:.4f} over {np.count_nonzero(significant)} nodes")
    return slope
