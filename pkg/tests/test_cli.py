#!/usr/bin/env python3
"""
Tests for the command line and the programmatic runner.

This module tests:
- Argument parsing
- Exit codes for configuration and dependency failures
- A complete run of every command on a small flat experiment
"""

import pytest

from src.artifacts import COMMAND_ARTIFACTS, ArtifactStore, pipeline_order
from src.cli import (
    EXIT_CONFIGURATION,
    EXIT_DEPENDENCY,
    EXIT_OK,
    build_parser,
    main,
    run,
)
from src.errors import ConfigurationError, DependencyError


class TestParser:
    """Test argument parsing."""

    def test_command_and_options(self):
        """Test the command, config and out options."""
        args = build_parser().parse_args(["scatter", "--config", "run.env", "--out", "results"])
        assert args.command == "scatter"
        assert args.config == "run.env"
        assert args.out == "results"

    def test_out_is_optional(self):
        """Test --out defaults to the configured directory."""
        assert build_parser().parse_args(["report", "--config", "run.env"]).out is None

    @pytest.mark.parametrize("argv", [["scatter"], ["plot", "--config", "run.env"], []])
    def test_invalid_arguments(self, argv):
        """Test missing config, unknown commands and empty input."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(argv)


class TestExitCodes:
    """Test the mapping of failures to exit codes."""

    def test_invalid_config_value(self, experiment_file, tmp_path):
        """Test an out-of-range value exits with 4."""
        path = experiment_file(["numbers.cfl = 0.99"])
        assert main(["simulate", "--config", str(path), "--out", str(tmp_path / "out")]) == EXIT_CONFIGURATION

    def test_missing_config_file(self, tmp_path):
        """Test a missing experiment file exits with 4."""
        assert main(["simulate", "--config", str(tmp_path / "absent.env")]) == EXIT_CONFIGURATION

    def test_missing_prerequisite(self, experiment_file, tmp_path, capsys):
        """Test scatter on an empty directory exits with 3 and names the artifact."""
        path = experiment_file(["numbers.epsilon = 0.1"])
        assert main(["scatter", "--config", str(path), "--out", str(tmp_path / "empty")]) == EXIT_DEPENDENCY
        assert "field.bin" in capsys.readouterr().err

    def test_run_unknown_command(self, small_experiment):
        """Test the programmatic runner rejects unknown commands."""
        with pytest.raises(ConfigurationError):
            run(small_experiment, "plot")

    def test_run_missing_prerequisite(self, small_experiment):
        """Test the programmatic runner raises DependencyError."""
        with pytest.raises(DependencyError):
            run(small_experiment, "decay")


class TestKirchhoffCommand:
    """Test the one command that needs no upstream artifacts."""

    def test_verify_kirchhoff_exits_cleanly(self, experiment_file, tmp_path):
        """Test verify-kirchhoff writes its table, summary and manifest."""
        path = experiment_file(["numbers.sphere_degree = 24", "numbers.radial_nodes = 16"])
        out = tmp_path / "kirchhoff"
        assert main(["verify-kirchhoff", "--config", str(path), "--out", str(out)]) == EXIT_OK
        store = ArtifactStore(out)
        summary = store.read_json("kirchhoff_summary.json")
        assert summary["verdicts"]["affine"] == "pass"
        assert summary["errors"]["cubic"] < 1e-9
        assert store.verify_manifest() is None


@pytest.mark.slow
class TestPipelineIntegration:
    """Run every command in dependency order on a small flat experiment."""

    def test_full_pipeline(self, small_experiment):
        """Test each command writes its artifacts and the report sees every summary."""
        summaries = {command: run(small_experiment, command) for command in pipeline_order()}
        store = ArtifactStore(small_experiment.io.out_dir)
        for command, (_, produced) in COMMAND_ARTIFACTS.items():
            for name in produced:
                assert store.exists(name), f"{command} did not write {name}"
        report = summaries["report"]
        assert all(row["present"] for row in report["commands"])
        assert len(report["commands"]) == len(COMMAND_ARTIFACTS) - 1
        assert len({summary["config_hash"] for summary in summaries.values()}) == 1

    def test_pipeline_flat_scattering(self, small_experiment):
        """Test flat A1 = -2 and byte-identical reruns of scatter."""
        for command in ("simulate", "scatter"):
            run(small_experiment, command)
        store = ArtifactStore(small_experiment.io.out_dir)
        first = {name: store.read_bytes(name) for name in ("scattering.csv", "scattering.json", "traces.csv")}
        run(small_experiment, "scatter")
        for name, data in first.items():
            assert store.read_bytes(name) == data, f"{name} changed on rerun"
        frame = store.read_frame("scattering.csv")
        assert (frame["a1"] == -2.0).all()
        assert store.read_json("gauge_check.json")["passed"]
