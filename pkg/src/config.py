#!/usr/bin/env python3
"""
Configuration Management for wnc-scatter.

This module provides centralized configuration management including:
- Environment variable loading (WNC_THREADS, LOG_LEVEL, LOG_FILE)
- Logging configuration
- Parsing of flat experiment files with dotted section keys
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dotenv import dotenv_values, load_dotenv
from pydantic import ValidationError

from .errors import ConfigurationError
from .models.experiment import ExperimentConfig, IOBlock, NumbersBlock
from .models.metric import MetricModel


# ================================
# Environment Setup
# ================================

# Load environment variables from .env file
load_dotenv()


# ================================
# Configuration Classes
# ================================

class LoggingConfig:
    """Logging configuration management."""

    def __init__(self):
        self.level = os.getenv("LOG_LEVEL", "INFO").upper()
        self.log_file = os.getenv("LOG_FILE", "")
        self.format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

        if self.log_file:
            log_dir = os.path.dirname(self.log_file)
            if log_dir and not os.path.exists(log_dir):
                os.makedirs(log_dir, exist_ok=True)

    def configure_logging(self):
        """Configure Python logging."""
        handlers: List[logging.Handler] = [logging.StreamHandler()]
        if self.log_file:
            handlers.append(logging.FileHandler(self.log_file))
        logging.basicConfig(
            level=getattr(logging, self.level, logging.INFO),
            format=self.format,
            handlers=handlers,
        )


class PerformanceConfig:
    """Parallelism configuration."""

    def __init__(self):
        raw = os.getenv("WNC_THREADS", "").strip()
        default = os.cpu_count() or 1
        if not raw:
            self.threads = default
        else:
            try:
                self.threads = int(raw)
            except ValueError as e:
                raise ConfigurationError(f"WNC_THREADS must be an integer, got '{raw}'") from e
            if self.threads < 1:
                raise ConfigurationError(f"WNC_THREADS must be >= 1, got {self.threads}")


class Config:
    """Main configuration class that aggregates all configuration sections."""

    def __init__(self):
        self.logging = LoggingConfig()
        self.performance = PerformanceConfig()


# ================================
# Global Configuration Instance
# ================================

config = Config()


# ================================
# Experiment Files
# ================================

_LIST_KEYS = {"metric.c_coeffs", "metric.g0", "io.slice_times"}
_BOOL_KEYS = {"metric.radial"}
_DATA_KEYS = {
    "data.u0_family": ("u0", "family"),
    "data.u0_amplitude": ("u0", "amplitude"),
    "data.u1_family": ("u1", "family"),
    "data.u1_amplitude": ("u1", "amplitude"),
}
_SECTIONS = ("metric", "data", "numbers", "io")


def _parse_list(key: str, raw: str) -> List[float]:
    try:
        return [float(item) for item in raw.replace(";", ",").split(",") if item.strip()]
    except ValueError as e:
        raise ConfigurationError(f"'{key}' must be a comma separated list of numbers, got '{raw}'") from e


def _parse_bool(key: str, raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    raise ConfigurationError(f"'{key}' must be a boolean, got '{raw}'")


def fold_flat_config(flat: Dict[str, Optional[str]]) -> Dict[str, Any]:
    """
    Fold dotted keys into the nested structure of ExperimentConfig.

    Args:
        flat: Mapping of dotted keys to raw string values

    Returns:
        Dict[str, Any]: Nested mapping ready for validation

    Raises:
        ConfigurationError: For unknown sections or unparsable values
    """
    nested: Dict[str, Any] = {section: {} for section in _SECTIONS}
    for key, raw in flat.items():
        if raw is None:
            raise ConfigurationError(f"key '{key}' has no value")
        section, _, name = key.partition(".")
        if section not in _SECTIONS or not name:
            raise ConfigurationError(f"unknown configuration key '{key}'")
        if key in _LIST_KEYS:
            value: Any = _parse_list(key, raw)
            if key == "metric.g0":
                if len(value) != 16:
                    raise ConfigurationError(f"'metric.g0' needs 16 numbers (row-major), got {len(value)}")
                value = [value[4 * i:4 * i + 4] for i in range(4)]
        elif key in _BOOL_KEYS:
            value = _parse_bool(key, raw)
        else:
            value = raw.strip()
        if key in _DATA_KEYS:
            profile, field_name = _DATA_KEYS[key]
            nested["data"].setdefault(profile, {})[field_name] = value
        else:
            nested[section][name] = value
    return {k: v for k, v in nested.items() if v}


def build_experiment_config(flat: Dict[str, Optional[str]], out_dir: Optional[str] = None) -> ExperimentConfig:
    """
    Validate a flat key-value mapping as an ExperimentConfig.

    Raises:
        ConfigurationError: If any key is unknown or any value is invalid
    """
    nested = fold_flat_config(flat)
    if out_dir is not None:
        nested.setdefault("io", {})["out_dir"] = out_dir
    try:
        _reject_unknown(nested)
        return ExperimentConfig(**nested)
    except ValidationError as e:
        raise ConfigurationError(f"invalid experiment configuration: {e}") from e


def _reject_unknown(nested: Dict[str, Any]) -> None:
    """Fields inside each block must be known to the block model."""
    allowed = {
        "metric": set(MetricModel.model_fields),
        "numbers": set(NumbersBlock.model_fields),
        "io": set(IOBlock.model_fields),
        "data": {"u0", "u1", "R"},
    }
    for section, block in nested.items():
        unknown = set(block) - allowed[section]
        if unknown:
            raise ConfigurationError(f"unknown configuration key(s): {sorted(f'{section}.{k}' for k in unknown)}")


def load_experiment_config(path: Union[str, Path], out_dir: Optional[str] = None) -> ExperimentConfig:
    """
    Load an experiment file of `key = value` lines with dotted keys.

    Args:
        path: Path to the file
        out_dir: Optional override of io.out_dir

    Returns:
        ExperimentConfig: Validated configuration

    Raises:
        ConfigurationError: If the file is missing or invalid
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"configuration file '{path}' not found")
    flat = dotenv_values(path)
    logging.getLogger(__name__).debug(f"Loaded {len(flat)} keys from {path}")
    return build_experiment_config(dict(flat), out_dir)


def config_hash(experiment: ExperimentConfig) -> str:
    """SHA-256 of the canonical JSON form of a validated configuration, output directory excluded."""
    payload = experiment.model_dump(mode="json")
    payload["io"].pop("out_dir", None)
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_env_file(env_file: Optional[str] = None) -> bool:
    """
    Load environment variables from a specific file.

    Args:
        env_file: Path to environment file (defaults to .env)

    Returns:
        bool: True if file was loaded successfully
    """
    if env_file:
        return load_dotenv(env_file)
    return load_dotenv()


# ================================
# Module Exports
# ================================

__all__ = [
    "Config",
    "LoggingConfig",
    "PerformanceConfig",
    "config",
    "fold_flat_config",
    "build_experiment_config",
    "load_experiment_config",
    "config_hash",
    "load_env_file",
]
