"""
Decay of the spherical means of U_hat along q = -2t.
"""

import logging
import math
from typing import Sequence

import numpy as np

from ..errors import InputDomainError
from ..models.reports import DecayRow, DecayTable
from ..reduced_system.fitting import fit_loglog_slope
from ..reduced_system.profiles import u_hat_profile
from ..reduced_system.scattering import ScatteringData

logger = logging.getLogger(__name__)

DECAY_THRESHOLD = -0.2
ZERO_FLOOR = 1e-12


def spherical_means_decay(sd: ScatteringData, G_value: float, t_samples: Sequence[float]) -> DecayTable:
    """
    M(t) = 4 pi |U_hat(eps ln t - delta, -2t)| for radial data.

    Args:
        sd: Scattering data
        G_value: G for the radial metric
        t_samples: Times, each at least 2 e^{delta/eps}

    Returns:
        DecayTable: Samples, fitted exponent and verdict (exponent <= -0.2)

    Raises:
        InputDomainError: If a time is below 2 e^{delta/eps}
        ExtrapolationError: If -2t is below the grid and Ahat has no tail model
    """
    floor_time = 2.0 * math.exp(sd.delta / sd.epsilon)
    rows = []
    for t in sorted(t_samples):
        if t < floor_time:
            raise InputDomainError(f"decay sample t = {t} is below 2 e^(delta/eps) = {floor_time:.6g}")
        s = sd.epsilon * math.log(t) - sd.delta
        rows.append(DecayRow(t=t, s=s, M=4.0 * math.pi * abs(u_hat_profile(sd, G_value, s, -2.0 * t))))
    if rows and -2.0 * rows[-1].t < sd.q_grid[0]:
        logger.warning(f"decay samples reach q = {-2.0 * rows[-1].t:.4g} below the grid; using the tail model")

    m = np.array([row.M for row in rows])
    exponent, _ = fit_loglog_slope([row.t for row in rows], np.where(m <= ZERO_FLOOR, 0.0, m))
    passed = exponent <= DECAY_THRESHOLD
    logger.info(f"Spherical-means decay exponent {exponent:.3f} over {len(rows)} samples")
    return DecayTable(rows=rows, fitted_exponent=exponent, threshold=DECAY_THRESHOLD, passed=passed)


def dyadic_times(t_start: float, t_end: float) -> list:
    """t_start, 2 t_start, 4 t_start, ... up to t_end."""
    if t_start <= 0.0 or t_end < t_start:
        raise InputDomainError(f"need 0 < t_start <= t_end, got {t_start}, {t_end}")
    times = [t_start]
    while 2.0 * times[-1] <= t_end:
        times.append(2.0 * times[-1])
    return times
