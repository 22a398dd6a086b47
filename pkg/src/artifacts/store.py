"""
Artifact store: atomic file writes, content hashes and the run manifest.
"""

import hashlib
import json
import logging
import math
import platform
from pathlib import Path
from typing import Any, Dict, Optional, Union

import networkx
import numpy
import pandas as pd
import pydantic
import scipy

from .. import __version__
from ..errors import ArtifactError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TOOL_VERSION = __version__
MANIFEST_NAME = "manifest.json"
FLOAT_FORMAT = "%.17g"


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _sanitize(value: Any) -> Any:
    """Replace non-finite floats by strings so the output stays valid JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, numpy.generic):
        return _sanitize(value.item())
    return value


def restore_floats(value: Any) -> Any:
    """Inverse of the non-finite float encoding used in JSON artifacts."""
    if isinstance(value, str) and value in ("inf", "-inf", "nan"):
        return float(value)
    if isinstance(value, dict):
        return {k: restore_floats(v) for k, v in value.items()}
    if isinstance(value, list):
        return [restore_floats(v) for v in value]
    return value


def dump_json(payload: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_sanitize(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


class ArtifactStore:
    """
    Output directory of one experiment.

    Every write goes to '<name>.tmp' first and is moved into place with
    Path.replace; written artifacts are remembered with their hashes for
    the manifest.

    Args:
        out_dir: Output directory (created if missing)
        backup_count: Number of rotated manifest backups
    """

    def __init__(self, out_dir: Union[str, Path], backup_count: int = 3):
        self.out_dir = Path(out_dir)
        self.backup_count = backup_count
        self.written: Dict[str, str] = {}
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactError(f"cannot create output directory {self.out_dir}: {e}") from e

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def exists(self, name: str) -> bool:
        return self.path(name).is_file()

    # ------------------------------------------------------------------
    # Writing
    # ------------------------------------------------------------------

    def write_bytes(self, name: str, data: bytes) -> Path:
        """
        Atomically write an artifact.

        Raises:
            ArtifactError: If the write or the final move fails
        """
        target = self.path(name)
        temp_file = target.with_name(target.name + ".tmp")
        try:
            with open(temp_file, "wb") as f:
                f.write(data)
            temp_file.replace(target)
        except OSError as e:
            if temp_file.exists():
                try:
                    temp_file.unlink()
                except OSError:
                    pass
            logger.error(f"Failed to write {target}: {e}")
            raise ArtifactError(f"writing {name} failed: {e}") from e
        self.written[name] = hashlib.sha256(data).hexdigest()
        logger.info(f"Wrote {target} ({len(data)} bytes)")
        return target

    def write_text(self, name: str, text: str) -> Path:
        return self.write_bytes(name, text.encode("utf-8"))

    def write_json(self, name: str, payload: Any) -> Path:
        return self.write_text(name, dump_json(payload))

    def write_frame(self, name: str, frame: pd.DataFrame) -> Path:
        """CSV with 17 significant digits and Unix line endings."""
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return self.write_text(name, text)

    # ------------------------------------------------------------------
    # Reading
    # ------------------------------------------------------------------

    def read_bytes(self, name: str) -> bytes:
        try:
            return self.path(name).read_bytes()
        except OSError as e:
            raise ArtifactError(f"reading {name} failed: {e}") from e

    def read_json(self, name: str) -> Any:
        try:
            return restore_floats(json.loads(self.read_bytes(name).decode("utf-8")))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ArtifactError(f"{name} is not valid JSON: {e}") from e

    def read_frame(self, name: str) -> pd.DataFrame:
        try:
            return pd.read_csv(self.path(name), float_precision="round_trip")
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ArtifactError(f"reading {name} failed: {e}") from e

    # ------------------------------------------------------------------
    # Manifest
    # ------------------------------------------------------------------

    def _rotate_manifest(self) -> None:
        manifest = self.path(MANIFEST_NAME)
        try:
            for i in range(self.backup_count - 1, 0, -1):
                old_backup = manifest.with_suffix(f".bak{i}")
                new_backup = manifest.with_suffix(f".bak{i + 1}")
                if old_backup.exists():
                    old_backup.replace(new_backup)
            manifest.replace(manifest.with_suffix(".bak1"))
        except OSError as e:
            logger.warning(f"Failed to rotate manifest backups: {e}")

    def write_manifest(self, command: str, config_hash: str, wall_time: float) -> Dict[str, Any]:
        """
        Record the command, configuration hash, library versions and every
        artifact in the directory with its SHA-256.

        Artifacts listed by an earlier manifest stay listed while their files exist.

        Returns:
            Dict[str, Any]: Manifest content
        """
        artifacts: Dict[str, str] = {}
        if self.exists(MANIFEST_NAME):
            try:
                previous = self.read_json(MANIFEST_NAME).get("artifacts", {})
            except ArtifactError as e:
                logger.warning(f"Ignoring unreadable manifest: {e}")
                previous = {}
            for name in previous:
                if self.exists(name):
                    artifacts[name] = sha256_file(self.path(name))
            if self.backup_count > 0:
                self._rotate_manifest()
        artifacts.update(self.written)
        manifest = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "command": command,
            "config_hash": config_hash,
            "versions": library_versions(),
            "wall_time_seconds": wall_time,
            "artifacts": dict(sorted(artifacts.items())),
        }
        text = dump_json(manifest)
        target = self.path(MANIFEST_NAME)
        temp_file = target.with_name(target.name + ".tmp")
        try:
            temp_file.write_text(text, encoding="utf-8")
            temp_file.replace(target)
        except OSError as e:
            if temp_file.exists():
                temp_file.unlink()
            raise ArtifactError(f"writing manifest failed: {e}") from e
        logger.info(f"Manifest lists {len(artifacts)} artifacts")
        return manifest

    def verify_manifest(self) -> Optional[str]:
        """
        Re-hash the listed artifacts.

        Returns:
            Optional[str]: Name of the first artifact whose hash differs, or None
        """
        manifest = self.read_json(MANIFEST_NAME)
        for name, digest in sorted(manifest.get("artifacts", {}).items()):
            if not self.exists(name) or sha256_file(self.path(name)) != digest:
                return name
        return None


def library_versions() -> Dict[str, str]:
    return {
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "pydantic": pydantic.VERSION,
        "networkx": networkx.__version__,
    }
