"""
Command dependency graph.

Commands and artifacts are nodes of one directed graph: an edge
artifact -> command means the command reads the artifact, an edge
command -> artifact means the command writes it.
"""

import logging
from typing import Dict, List, Tuple

import networkx as nx

from ..errors import DependencyError, InputDomainError
from .store import ArtifactStore

logger = logging.getLogger(__name__)

# command: (consumed artifacts, produced artifacts)
COMMAND_ARTIFACTS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "simulate": ((), ("field.bin", "slices.csv", "convergence.csv", "simulate_summary.json")),
    "scatter": (
        ("field.bin",),
        ("scattering.csv", "scattering.json", "traces.csv", "gauge_check.json", "scatter_summary.json"),
    ),
    "verify-interior": (
        ("field.bin", "scattering.csv", "scattering.json"),
        ("interior.csv", "interior_summary.json"),
    ),
    "verify-kirchhoff": ((), ("kirchhoff.csv", "kirchhoff_summary.json")),
    "decay": (("scattering.csv", "scattering.json"), ("decay.csv", "decay_summary.json")),
    "classify": (("scattering.csv", "scattering.json"), ("classify.json",)),
    "scan": (
        ("field.bin", "scattering.csv", "scattering.json", "classify.json"),
        ("scan.csv", "scan_summary.json"),
    ),
    "report": ((), ("report.csv", "report.json")),
}

SUMMARIES: Dict[str, str] = {
    "simulate": "simulate_summary.json",
    "scatter": "scatter_summary.json",
    "verify-interior": "interior_summary.json",
    "verify-kirchhoff": "kirchhoff_summary.json",
    "decay": "decay_summary.json",
    "classify": "classify.json",
    "scan": "scan_summary.json",
}


def build_pipeline() -> nx.DiGraph:
    """Directed graph of commands and the artifacts they exchange."""
    graph = nx.DiGraph()
    for command, (consumed, produced) in COMMAND_ARTIFACTS.items():
        graph.add_node(command, kind="command")
        for name in consumed:
            graph.add_node(name, kind="artifact")
            graph.add_edge(name, command)
        for name in produced:
            graph.add_node(name, kind="artifact")
            graph.add_edge(command, name)
    for summary in SUMMARIES.values():
        graph.add_edge(summary, "report")
    return graph


PIPELINE = build_pipeline()


def _check_command(command: str) -> None:
    if command not in COMMAND_ARTIFACTS:
        raise InputDomainError(f"unknown command '{command}', expected one of {sorted(COMMAND_ARTIFACTS)}")


def required_artifacts(command: str) -> List[str]:
    """Artifacts a command reads, in sorted order."""
    _check_command(command)
    return sorted(COMMAND_ARTIFACTS[command][0])


def check_prerequisites(command: str, store: ArtifactStore) -> None:
    """
    Raises:
        DependencyError: Naming the first missing prerequisite artifact
    """
    for name in required_artifacts(command):
        if not store.exists(name):
            producer = next(iter(PIPELINE.predecessors(name)), None)
            logger.error(f"'{command}' needs {name}" + (f", produced by '{producer}'" if producer else ""))
            raise DependencyError(command, name)


def upstream_commands(command: str) -> List[str]:
    """Every command whose output the given command depends on, directly or not."""
    _check_command(command)
    return sorted(n for n in nx.ancestors(PIPELINE, command) if PIPELINE.nodes[n]["kind"] == "command")


def pipeline_order() -> List[str]:
    """Commands in a deterministic topological order."""
    commands = [n for n in nx.lexicographical_topological_sort(PIPELINE) if PIPELINE.nodes[n]["kind"] == "command"]
    return commands
