"""
Models package for the data-carrying records of wnc-scatter.

- MetricModel: coefficient family g^{ab}(u), linearization g0, speed c(u)
- InitialData / BumpProfile: radial bump data
- EikonalRegion: exterior region where the optical function is normalized
- ExperimentConfig: validated experiment description
- report records emitted by the verification operations
"""

from .metric import MetricModel
from .initial_data import BumpFamily, BumpProfile, InitialData
from .region import EikonalRegion
from .experiment import ExperimentConfig, IOBlock, NumbersBlock, SampleSpec
from .reports import (
    AssumptionResult,
    AssumptionScanTable,
    ClassificationRecord,
    DecayRow,
    DecayTable,
    GaugeCheckReport,
    HypothesisCheck,
    InteriorRow,
    ScanRow,
    ScanStatus,
    VerificationReport,
)

__all__ = [
    "MetricModel",
    "BumpFamily",
    "BumpProfile",
    "InitialData",
    "EikonalRegion",
    "ExperimentConfig",
    "IOBlock",
    "NumbersBlock",
    "SampleSpec",
    "AssumptionResult",
    "AssumptionScanTable",
    "ClassificationRecord",
    "DecayRow",
    "DecayTable",
    "GaugeCheckReport",
    "HypothesisCheck",
    "InteriorRow",
    "ScanRow",
    "ScanStatus",
    "VerificationReport",
]
