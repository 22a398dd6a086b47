#!/usr/bin/env python3
"""
Shared state of one command invocation.

A RunContext bundles the validated experiment, its artifact store and the
configuration hash; the loaders below rebuild upstream results from the
store so every command starts from artifacts, never from memory.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List

from ..artifacts import ArtifactStore, load_field
from ..models.experiment import ExperimentConfig
from ..models.region import EikonalRegion
from ..reduced_system.scattering import ScatteringData
from ..wave_solver.field import RadialField

logger = logging.getLogger(__name__)


# ================================
# Run Context
# ================================

@dataclass
class RunContext:
    """
    One command run.

    Attributes:
        experiment: Validated experiment configuration
        store: Output directory
        config_hash: SHA-256 of the canonical configuration
    """

    experiment: ExperimentConfig
    store: ArtifactStore
    config_hash: str

    @property
    def run_id(self) -> str:
        return self.config_hash[:12]

    @property
    def region(self) -> EikonalRegion:
        n = self.experiment.numbers
        return EikonalRegion(delta=n.delta, epsilon=n.epsilon, R=self.experiment.data.R, kappa=n.kappa)

    def summary(self, command: str, passed: bool, warnings: List[str], **fields: Any) -> Dict[str, Any]:
        """
        Summary record common to every command.

        Args:
            command: Command name
            passed: Overall verdict
            warnings: Quality warnings collected during the run
            **fields: Command specific entries

        Returns:
            Dict[str, Any]: Summary ready for write_json
        """
        record: Dict[str, Any] = {
            "command": command,
            "run_id": self.run_id,
            "config_hash": self.config_hash,
            "passed": bool(passed),
            "verdict": "pass" if passed else "fail",
            "warnings": list(dict.fromkeys(warnings)),
        }
        record.update(fields)
        return record


# ================================
# Artifact Loaders
# ================================

def load_snapshot(ctx: RunContext) -> RadialField:
    return load_field(ctx.store, "field.bin")


def load_scattering(ctx: RunContext) -> ScatteringData:
    """Rebuild ScatteringData from scattering.csv and scattering.json."""
    sd = ScatteringData.from_frame(ctx.store.read_frame("scattering.csv"), ctx.store.read_json("scattering.json"))
    logger.info(f"Loaded scattering data on {len(sd.q_grid)} points, q in [{sd.q_grid[0]:.4g}, {sd.q_grid[-1]:.4g}]")
    return sd
