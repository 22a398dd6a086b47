"""
Command implementations for simulation, scattering, verification and reporting.
"""

from typing import Any, Callable, Dict

from .context import RunContext, load_scattering, load_snapshot
from .simulation_tools import run_simulate
from .scattering_tools import run_classify, run_decay, run_scatter
from .verification_tools import run_scan, run_verify_interior, run_verify_kirchhoff
from .report_tools import run_report

COMMANDS: Dict[str, Callable[[RunContext], Dict[str, Any]]] = {
    "simulate": run_simulate,
    "scatter": run_scatter,
    "verify-interior": run_verify_interior,
    "verify-kirchhoff": run_verify_kirchhoff,
    "decay": run_decay,
    "classify": run_classify,
    "scan": run_scan,
    "report": run_report,
}

__all__ = [
    "COMMANDS",
    "RunContext",
    "load_scattering",
    "load_snapshot",
    "run_simulate",
    "run_scatter",
    "run_verify_interior",
    "run_verify_kirchhoff",
    "run_decay",
    "run_classify",
    "run_scan",
    "run_report",
]
