"""
Persistence: artifact store, field snapshots and the command graph.
"""

from .store import ArtifactStore, dump_json, library_versions, restore_floats, sha256_file
from .snapshot import decode_field, encode_field, load_field, save_field, slices_frame
from .pipeline import (
    COMMAND_ARTIFACTS,
    PIPELINE,
    SUMMARIES,
    build_pipeline,
    check_prerequisites,
    pipeline_order,
    required_artifacts,
    upstream_commands,
)

__all__ = [
    "ArtifactStore",
    "dump_json",
    "library_versions",
    "restore_floats",
    "sha256_file",
    "decode_field",
    "encode_field",
    "load_field",
    "save_field",
    "slices_frame",
    "COMMAND_ARTIFACTS",
    "PIPELINE",
    "SUMMARIES",
    "build_pipeline",
    "check_prerequisites",
    "pipeline_order",
    "required_artifacts",
    "upstream_commands",
]
