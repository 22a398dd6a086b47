"""
Report records emitted by the verification operations.

Each report carries its rows plus fitted exponents, a verdict and the
quality warnings collected while it was produced.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class ScanStatus(str, Enum):
    """Comparison of a fitted exponent against a vanishing threshold."""
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class InteriorRow(BaseModel):
    """One sample of the interior check."""
    t: float
    r: float
    u_num: float = Field(..., description="Z^I u from the simulated field")
    prediction: float = Field(..., description="Interior formula value")
    abs_err: float
    bound_ref: float = Field(..., description="<t - r>^{-2}")


class VerificationReport(BaseModel):
    """Outcome of verify_interior."""
    word: str = Field(default="", description="Multi-index word, '' or 'S'")
    gamma: float
    rows: List[InteriorRow] = Field(default_factory=list)
    fitted_exponent_q: float = Field(..., description="Slope of log abs_err against log <t - r> at the largest sample time")
    fitted_exponent_t: float = Field(..., description="Slope of log abs_err against log t on the axis rows r = 0 only")
    residual_q: float = Field(default=0.0, description="RMS residual of the q-exponent fit")
    passed: bool
    warnings: List[str] = Field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


class DecayRow(BaseModel):
    t: float
    s: float
    M: float


class DecayTable(BaseModel):
    """Spherical-means decay samples and their fitted exponent."""
    rows: List[DecayRow] = Field(default_factory=list)
    fitted_exponent: float
    threshold: float = -0.2
    passed: bool


class HypothesisCheck(BaseModel):
    """Verdict on one vanishing hypothesis."""
    name: str
    met: bool
    detail: str
    measured: Optional[float] = None
    threshold: Optional[float] = None


class ClassificationRecord(BaseModel):
    """Outcome of classify_vanishing."""
    null_condition: bool
    tau: float
    C0: float
    B0: float
    tail_exponent: float
    hypotheses: List[HypothesisCheck] = Field(default_factory=list)
    verdict: str

    def hypothesis(self, name: str) -> HypothesisCheck:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)

    @property
    def certified(self) -> List[str]:
        """Names of hypotheses that are met."""
        return [h.name for h in self.hypotheses if h.met]


class ScanRow(BaseModel):
    t: float
    D1: float
    D2: float
    D3: float


class AssumptionResult(BaseModel):
    name: str
    exponent: float
    threshold: float
    status: ScanStatus


class AssumptionScanTable(BaseModel):
    """Outcome of assumption_scan."""
    nu0: float
    B0: float
    B1: float
    rows: List[ScanRow] = Field(default_factory=list)
    assumptions: List[AssumptionResult] = Field(default_factory=list)
    consistent_with_nonzero: bool


class GaugeCheckReport(BaseModel):
    """Outcome of gauge_independence_check."""
    delta_a: float
    delta_b: float
    kappa_a: float
    kappa_b: float
    q_min: float
    q_max: float
    max_difference: float
    max_abs_a_hat: float
    relative_difference: float
    tolerance: float
    passed: bool
    time_translation_residual: Optional[float] = None
    warnings: List[str] = Field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")
