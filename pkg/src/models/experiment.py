"""
Experiment configuration: metric, data, numerical parameters and output options.
"""

import math
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .initial_data import InitialData
from .metric import MetricModel


class NumbersBlock(BaseModel):
    """Numerical parameters of a run."""

    epsilon: float = Field(default=0.1, gt=0.0, le=0.5, description="Data amplitude")
    delta: float = Field(default=0.05, gt=0.0, lt=1.0, description="Gauge parameter")
    delta_alt: Optional[float] = Field(
        default=None, gt=0.0, lt=1.0, description="Second gauge parameter for the time-translation check"
    )
    kappa: float = Field(default=0.5, gt=0.0, lt=1.0, description="Cone slope of the eikonal region")
    kappa_alt: float = Field(default=0.6, gt=0.0, lt=1.0, description="Second cone slope for the gauge check")
    t_max: float = Field(default=80.0, gt=0.0, description="Simulation horizon")
    dr: float = Field(default=0.01, gt=0.0, description="Radial spacing")
    cfl: float = Field(default=0.9, gt=0.0, description="Courant number")
    q_step: float = Field(default=0.02, gt=0.0, description="Spacing of characteristic labels")
    q_min: Optional[float] = Field(default=None, description="Lowest label; defaults to -(t_verify + r_verify)")
    trace_dt: float = Field(default=0.05, gt=0.0, description="Sample spacing along characteristics")
    trace_substeps: int = Field(default=2, ge=1, description="RK4 steps per sample interval")
    sphere_degree: int = Field(default=24, ge=2, description="Sphere rule exactness degree")
    radial_nodes: int = Field(default=64, ge=1, description="Gauss-Legendre nodes in rho")
    gamma: float = Field(default=0.6, gt=0.5, lt=1.0, description="Interior region exponent")
    nu0: float = Field(default=0.75, gt=0.0, lt=1.0, description="Assumption scan exponent")
    t_verify: float = Field(default=10.0, gt=0.0, description="Largest interior sample time")
    r_verify: Optional[float] = Field(
        default=None, ge=0.0, description="Largest interior sample radius; defaults to t_verify - t_verify^gamma"
    )
    gauge_tolerance: float = Field(default=0.05, gt=0.0, description="Relative tolerance of the gauge check")

    @field_validator("cfl")
    @classmethod
    def validate_cfl(cls, v):
        if v > 0.95:
            raise ValueError(f"cfl must be <= 0.95, got {v}")
        return v

    @property
    def interior_radius(self) -> float:
        """Largest radius of the interior check, r < t - t^gamma at t = t_verify."""
        if self.r_verify is not None:
            return self.r_verify
        return max(self.t_verify - self.t_verify ** self.gamma, 0.0)

    @property
    def label_floor(self) -> float:
        """Lowest characteristic label; covers q = -(t + r) over the interior check."""
        if self.q_min is not None:
            return self.q_min
        return -(self.t_verify + self.interior_radius)


class IOBlock(BaseModel):
    """Output options."""

    out_dir: str = Field(default="out", description="Output directory")
    snapshot_stride: int = Field(default=1, ge=1, description="Keep every k-th time level")
    slice_times: List[float] = Field(default_factory=list, description="Times exported to slices.csv")


class ExperimentConfig(BaseModel):
    """Validated experiment description."""

    metric: MetricModel = Field(default_factory=MetricModel.minkowski)
    data: InitialData = Field(default_factory=InitialData.standard_bump)
    numbers: NumbersBlock = Field(default_factory=NumbersBlock)
    io: IOBlock = Field(default_factory=IOBlock)

    @model_validator(mode="after")
    def validate_labels(self):
        """Labels must start below the support edge."""
        if self.numbers.label_floor >= self.data.R:
            raise ValueError(
                f"lowest label {self.numbers.label_floor} must lie below R = {self.data.R}"
            )
        return self

    @model_validator(mode="after")
    def validate_launch_horizon(self):
        """The deepest label must meet the cone boundary before t_max for every gauge pair."""
        n = self.numbers
        latest = max(
            latest_launch_time(n.label_floor, self.data.R, n.epsilon, delta, kappa)
            for delta in {n.delta, n.delta_alt if n.delta_alt is not None else n.delta}
            for kappa in {n.kappa, n.kappa_alt}
        )
        if latest >= n.t_max:
            raise ValueError(
                f"label {n.label_floor:.4g} is launched at t = {latest:.4g}, not before t_max = {n.t_max}; "
                f"raise numbers.t_max or lower numbers.t_verify"
            )
        return self


def latest_launch_time(q_label: float, R: float, epsilon: float, delta: float, kappa: float) -> float:
    """Launch time of q_label on the cone r = kappa (t + e^{delta/eps}) + 2R, not before e^{delta/eps}."""
    start = math.exp(delta / epsilon)
    return max((kappa * start + 2.0 * R - q_label) / (1.0 - kappa), start)


MIN_RADII_PER_TIME = 3


class SampleSpec(BaseModel):
    """Sample lattice of the interior check."""

    t_values: List[float] = Field(..., min_length=1, description="Sample times")
    radii_per_time: int = Field(
        default=8, ge=MIN_RADII_PER_TIME, description="Radii per time in [0, t - t^gamma); the <t - r> fit needs several"
    )
    noise_floor: float = Field(
        default=1e-6, ge=0.0, description="Rows with |u_num| and |prediction| below this are null"
    )

    @field_validator("t_values")
    @classmethod
    def validate_times(cls, v):
        if any(t <= 0.0 for t in v):
            raise ValueError("sample times must be positive")
        return sorted(v)
