#!/usr/bin/env python3
"""
Tests for Configuration Management System.

This module tests centralized configuration management including:
- Environment variable loading
- Logging and thread-count configuration
- Flat experiment files with dotted keys
- Configuration hashing
"""

import math
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from src.config import (
    Config,
    LoggingConfig,
    PerformanceConfig,
    build_experiment_config,
    config,
    config_hash,
    fold_flat_config,
    load_env_file,
    load_experiment_config,
)
from src.errors import ConfigurationError
from src.models import ExperimentConfig, NumbersBlock
from src.models.experiment import latest_launch_time
from src.tools.verification_tools import interior_times

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


class TestLoggingConfig:
    """Test logging configuration management."""

    def test_default_config(self):
        """Test default logging configuration."""
        with patch.dict(os.environ, {}, clear=True):
            logging_config = LoggingConfig()
            assert logging_config.level == "INFO"
            assert logging_config.log_file == ""
            assert "%(asctime)s" in logging_config.format

    def test_custom_config(self):
        """Test custom logging configuration."""
        with patch.dict(os.environ, {"LOG_LEVEL": "debug", "LOG_FILE": "custom/path.log"}):
            with patch("os.makedirs"):
                logging_config = LoggingConfig()
            assert logging_config.level == "DEBUG"
            assert logging_config.log_file == "custom/path.log"

    @patch("os.makedirs")
    def test_log_directory_creation(self, mock_makedirs):
        """Test log directory creation."""
        with patch.dict(os.environ, {"LOG_FILE": "custom/logs/run.log"}):
            LoggingConfig()
            mock_makedirs.assert_called_once_with("custom/logs", exist_ok=True)


class TestPerformanceConfig:
    """Test thread-count configuration."""

    def test_default_threads(self):
        """Test the default follows the CPU count."""
        with patch.dict(os.environ, {}, clear=True):
            assert PerformanceConfig().threads == (os.cpu_count() or 1)

    def test_custom_threads(self):
        """Test WNC_THREADS is honoured."""
        with patch.dict(os.environ, {"WNC_THREADS": "3"}):
            assert PerformanceConfig().threads == 3

    @pytest.mark.parametrize("raw", ["zero", "0", "-2", "1.5"])
    def test_invalid_threads(self, raw):
        """Test non-integer and non-positive thread counts."""
        with patch.dict(os.environ, {"WNC_THREADS": raw}):
            with pytest.raises(ConfigurationError, match="WNC_THREADS"):
                PerformanceConfig()


class TestMainConfig:
    """Test the aggregated configuration."""

    def test_config_sections(self):
        """Test both sections are created."""
        with patch.dict(os.environ, {}, clear=True):
            main = Config()
            assert isinstance(main.logging, LoggingConfig)
            assert isinstance(main.performance, PerformanceConfig)

    def test_global_instance_exists(self):
        """Test the module-level instance."""
        assert isinstance(config, Config)
        assert config.performance.threads >= 1


class TestFoldFlatConfig:
    """Test folding dotted keys into nested blocks."""

    def test_sections_and_lists(self):
        """Test lists, booleans and data profiles."""
        nested = fold_flat_config({
            "metric.c_coeffs": "1.0, 1.0",
            "metric.radial": "true",
            "data.u0_family": "bump",
            "data.u0_amplitude": "2.0",
            "numbers.epsilon": "0.2",
            "io.slice_times": "0, 5, 10",
        })
        assert nested["metric"] == {"c_coeffs": [1.0, 1.0], "radial": True}
        assert nested["data"] == {"u0": {"family": "bump", "amplitude": "2.0"}}
        assert nested["numbers"] == {"epsilon": "0.2"}
        assert nested["io"] == {"slice_times": [0.0, 5.0, 10.0]}

    def test_g0_is_reshaped(self):
        """Test 16 numbers become a 4 x 4 matrix."""
        values = ", ".join(str(float(k)) for k in range(16))
        nested = fold_flat_config({"metric.g0": values})
        assert nested["metric"]["g0"][1] == [4.0, 5.0, 6.0, 7.0]

    def test_empty_sections_dropped(self):
        """Test sections without keys are left to their defaults."""
        assert fold_flat_config({"numbers.dr": "0.02"}) == {"numbers": {"dr": "0.02"}}

    @pytest.mark.parametrize("flat", [
        {"solver.dr": "0.01"},
        {"numbers": "0.01"},
        {"numbers.dr": None},
        {"metric.radial": "maybe"},
        {"metric.c_coeffs": "1.0, one"},
        {"metric.g0": "1, 2, 3"},
    ])
    def test_invalid_flat_config(self, flat):
        """Test unknown sections, missing values and bad literals."""
        with pytest.raises(ConfigurationError):
            fold_flat_config(flat)


class TestExperimentFiles:
    """Test loading and validating experiment files."""

    def test_build_defaults(self):
        """Test an empty mapping gives the default experiment."""
        experiment = build_experiment_config({})
        assert experiment.metric.is_minkowski
        assert experiment.numbers.epsilon == 0.1
        assert experiment.numbers.label_floor == pytest.approx(-(20.0 - 10.0 ** 0.6))

    def test_out_dir_override(self):
        """Test the command-line output directory wins."""
        experiment = build_experiment_config({"io.out_dir": "a"}, out_dir="b")
        assert experiment.io.out_dir == "b"

    def test_load_file(self, experiment_file):
        """Test a small experiment file."""
        path = experiment_file([
            "# nonlinear speed",
            "metric.c_coeffs = 1.0, 1.0",
            "numbers.epsilon = 0.05",
            "numbers.q_min = -3",
            "io.snapshot_stride = 2",
        ])
        experiment = load_experiment_config(path)
        assert experiment.metric.c1 == 1.0
        assert experiment.numbers.epsilon == 0.05
        assert experiment.numbers.label_floor == -3.0
        assert experiment.io.snapshot_stride == 2

    @pytest.mark.parametrize("name", ["minkowski.env", "nonlinear.env"])
    def test_shipped_configs(self, name):
        """Test the bundled experiment files validate."""
        experiment = load_experiment_config(CONFIG_DIR / name)
        assert experiment.data.R == 1.0

    @pytest.mark.parametrize("lines", [
        ["numbers.resolution = 3"],
        ["numbers.epsilon = 0.9"],
        ["numbers.cfl = 0.99"],
        ["numbers.q_min = 2.0"],
        ["data.u0_family = gaussian"],
        ["io.snapshot_stride = 0"],
    ])
    def test_invalid_files(self, experiment_file, lines):
        """Test unknown keys and out-of-range values."""
        with pytest.raises(ConfigurationError):
            load_experiment_config(experiment_file(lines))

    def test_missing_file(self, tmp_path):
        """Test a missing file is a configuration error."""
        with pytest.raises(ConfigurationError, match="not found"):
            load_experiment_config(tmp_path / "absent.env")


class TestConfigHash:
    """Test the configuration fingerprint."""

    def test_out_dir_excluded(self):
        """Test runs differing only in their output directory share a hash."""
        a = ExperimentConfig(io={"out_dir": "one"})
        b = ExperimentConfig(io={"out_dir": "two"})
        assert config_hash(a) == config_hash(b)

    def test_numbers_change_hash(self):
        """Test numerical parameters enter the hash."""
        a = ExperimentConfig()
        b = ExperimentConfig(numbers={"dr": 0.02})
        assert config_hash(a) != config_hash(b)
        assert len(config_hash(a)) == 64


class TestEnvironmentHelpers:
    """Test environment helper functions."""

    @patch("src.config.load_dotenv")
    def test_load_env_file_default(self, mock_load_dotenv):
        """Test loading the default .env file."""
        mock_load_dotenv.return_value = True
        assert load_env_file() is True
        mock_load_dotenv.assert_called_once_with()

    @patch("src.config.load_dotenv")
    def test_load_env_file_custom(self, mock_load_dotenv):
        """Test loading a custom environment file."""
        mock_load_dotenv.return_value = True
        assert load_env_file("custom.env") is True
        mock_load_dotenv.assert_called_once_with("custom.env")


class TestLabelFloor:
    """Test the derived label floor and the launch horizon."""

    @pytest.mark.parametrize("t_verify, gamma", [(10.0, 0.6), (6.6, 0.6), (20.0, 0.8), (3.3, 0.55)])
    def test_floor_covers_interior_samples(self, t_verify, gamma):
        """Test every q = -(t + r) sampled by the interior check lies above the floor."""
        numbers = NumbersBlock(t_verify=t_verify, gamma=gamma)
        for t in interior_times(math.exp(numbers.delta / numbers.epsilon), numbers.t_verify):
            edge = t - t ** gamma
            assert numbers.label_floor <= -t - edge + 1e-12

    def test_explicit_radius(self):
        """Test a configured r_verify is used as given."""
        numbers = NumbersBlock(t_verify=10.0, r_verify=2.0)
        assert numbers.interior_radius == 2.0
        assert numbers.label_floor == -12.0

    def test_explicit_q_min_wins(self):
        """Test q_min overrides the derived floor."""
        assert NumbersBlock(t_verify=10.0, q_min=-3.0).label_floor == -3.0

    def test_launch_time(self):
        """Test the launch time on the default cone and the clip at e^{delta/eps}."""
        assert latest_launch_time(-4.0, 1.0, 0.1, 0.05, 0.5) == pytest.approx(2.0 * (0.5 * math.exp(0.5) + 6.0))
        assert latest_launch_time(0.9, 1.0, 0.1, 0.05, 0.5) == pytest.approx(math.exp(0.5) + 2.2)
        assert latest_launch_time(5.0, 1.0, 0.1, 0.05, 0.5) == pytest.approx(math.exp(0.5))

    def test_short_horizon_rejected(self):
        """Test a floor launching after t_max is a configuration error."""
        with pytest.raises(ConfigurationError, match="t_max"):
            build_experiment_config({"numbers.t_max": "20"})

    def test_steeper_cone_enters_horizon_check(self):
        """Test kappa_alt is checked alongside kappa."""
        flat = {"numbers.q_min": "-4", "numbers.t_max": "16"}
        build_experiment_config({**flat, "numbers.kappa_alt": "0.5"})
        with pytest.raises(ConfigurationError, match="t_max"):
            build_experiment_config({**flat, "numbers.kappa_alt": "0.7"})
