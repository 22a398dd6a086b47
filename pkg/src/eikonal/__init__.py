"""
Characteristics of the eikonal equation, limit extraction and the gauge check.
"""

from .tracer import (
    CharacteristicTrace,
    LaunchPoint,
    label_consistency_residual,
    label_schedule,
    launch_times,
    trace_batch,
    trace_characteristic,
    traces_to_frame,
)
from .extraction import extract_limits, limit_history, run_extraction
from .gauge_check import gauge_independence_check, radial_G

__all__ = [
    "CharacteristicTrace",
    "LaunchPoint",
    "label_consistency_residual",
    "label_schedule",
    "launch_times",
    "trace_batch",
    "trace_characteristic",
    "traces_to_frame",
    "extract_limits",
    "limit_history",
    "run_extraction",
    "gauge_independence_check",
    "radial_G",
]
