#!/usr/bin/env python3
"""
Command line entry point.

    wnc-scatter <command> --config <file> [--out <dir>]

Exit status: 0 on success, 2 for a failed computation, 3 for a missing
prerequisite artifact, 4 for an invalid configuration.
"""

import argparse
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from . import __version__
from .artifacts import ArtifactStore, check_prerequisites, upstream_commands
from .config import config, config_hash, load_experiment_config
from .errors import ConfigurationError, DependencyError, WNCError
from .models.experiment import ExperimentConfig
from .tools import COMMANDS, RunContext

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 2
EXIT_DEPENDENCY = 3
EXIT_CONFIGURATION = 4


# ================================
# Programmatic Entry
# ================================

def run(experiment: ExperimentConfig, command: str, out_dir: Optional[str] = None) -> Dict[str, Any]:
    """
    Run one command of the pipeline and update the manifest.

    Args:
        experiment: Validated configuration
        command: One of simulate, scatter, verify-interior, verify-kirchhoff,
            decay, classify, scan, report
        out_dir: Output directory, defaults to io.out_dir

    Returns:
        Dict[str, Any]: The command summary

    Raises:
        DependencyError: If a prerequisite artifact is missing
        WNCError: Any error raised by the command itself
    """
    if command not in COMMANDS:
        raise ConfigurationError(f"unknown command '{command}', expected one of {sorted(COMMANDS)}")
    store = ArtifactStore(out_dir or experiment.io.out_dir)
    digest = config_hash(experiment)
    try:
        check_prerequisites(command, store)
    except DependencyError:
        logger.error(f"Run these first: {', '.join(upstream_commands(command))}")
        raise

    logger.info(f"Running '{command}' into {store.out_dir} (config {digest[:12]})")
    started = time.perf_counter()
    summary = COMMANDS[command](RunContext(experiment=experiment, store=store, config_hash=digest))
    store.write_manifest(command, digest, time.perf_counter() - started)
    logger.info(f"'{command}' finished: {summary.get('verdict')}")
    return summary


# ================================
# Command Line
# ================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wnc-scatter",
        description="Scattering data and asymptotics of quasilinear waves without the null condition.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=sorted(COMMANDS), help="Pipeline step to run")
    parser.add_argument("--config", required=True, metavar="FILE", help="Experiment file with dotted keys")
    parser.add_argument("--out", default=None, metavar="DIR", help="Override io.out_dir")
    return parser


def _exit_code(error: WNCError) -> int:
    if isinstance(error, DependencyError):
        return EXIT_DEPENDENCY
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIGURATION
    return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config.logging.configure_logging()
    try:
        experiment = load_experiment_config(args.config, out_dir=args.out)
        run(experiment, args.command)
    except WNCError as e:
        logger.error(f"'{args.command}' failed: {e}", exc_info=True)
        print(f"wnc-scatter {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return _exit_code(e)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
