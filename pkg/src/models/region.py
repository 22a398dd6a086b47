"""
Exterior region on which the optical function is normalized.
"""

import math

import numpy as np

from pydantic import BaseModel, ConfigDict, Field


class EikonalRegion(BaseModel):
    """
    Region {t > e^{delta/eps}, r > kappa (t + e^{delta/eps}) + 2R}.

    The optical function equals r - t on the cone boundary; kappa = 1/2
    is the default slope, other slopes serve the gauge check.
    """

    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., gt=0.0, description="Gauge parameter delta")
    epsilon: float = Field(..., gt=0.0, description="Data amplitude eps")
    R: float = Field(..., gt=0.0, description="Data support radius")
    kappa: float = Field(default=0.5, gt=0.0, lt=1.0, description="Cone slope")

    @property
    def start_time(self) -> float:
        """e^{delta/eps}, the earliest time of the region."""
        return math.exp(self.delta / self.epsilon)

    def boundary_radius(self, t: float) -> float:
        """Radius of the cone boundary at time t."""
        return self.kappa * (t + self.start_time) + 2.0 * self.R

    def contains(self, t: float, r: float) -> bool:
        return t > self.start_time and r > self.boundary_radius(t)

    def launch_time(self, q_label: float) -> float:
        """Time at which the level set q = q_label meets the cone boundary."""
        return (self.kappa * self.start_time + 2.0 * self.R - q_label) / (1.0 - self.kappa)

    def slow_time(self, t):
        """s = eps ln t - delta."""
        return self.epsilon * np.log(t) - self.delta
