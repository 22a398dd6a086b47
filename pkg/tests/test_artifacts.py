#!/usr/bin/env python3
"""
Tests for artifact persistence.

This module tests:
- Atomic writes, JSON and CSV round trips in the artifact store
- The manifest and its backups
- Field snapshots and time slices
- The command dependency graph
"""

import math

import numpy as np
import pandas as pd
import pytest

from src.artifacts import (
    COMMAND_ARTIFACTS,
    PIPELINE,
    ArtifactStore,
    check_prerequisites,
    decode_field,
    dump_json,
    encode_field,
    load_field,
    pipeline_order,
    required_artifacts,
    save_field,
    slices_frame,
    upstream_commands,
)
from src.errors import ArtifactError, DependencyError, InputDomainError


class TestArtifactStore:
    """Test the artifact store."""

    def test_write_leaves_no_temp_file(self, store):
        """Test writes land atomically under the final name."""
        store.write_text("note.txt", "hello\n")
        assert store.path("note.txt").read_text() == "hello\n"
        assert not store.path("note.txt.tmp").exists()
        assert "note.txt" in store.written

    def test_json_non_finite_round_trip(self, store):
        """Test infinities survive as strings and come back as floats."""
        store.write_json("summary.json", {"exponent": -math.inf, "values": [1.0, math.inf], "flag": True})
        text = store.path("summary.json").read_text()
        assert '"-inf"' in text
        payload = store.read_json("summary.json")
        assert payload["exponent"] == -math.inf
        assert payload["values"] == [1.0, math.inf]
        assert payload["flag"] is True

    def test_canonical_json(self):
        """Test sorted keys and a trailing newline."""
        text = dump_json({"b": 1, "a": np.float64(0.5)})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("}\n")

    def test_frame_precision(self, store):
        """Test CSV floats keep all 17 significant digits."""
        frame = pd.DataFrame({"q": [1.0 / 3.0, -2.0], "value": [math.pi, 1e-300]})
        store.write_frame("table.csv", frame)
        restored = store.read_frame("table.csv")
        assert restored["q"].iloc[0] == 1.0 / 3.0
        assert restored["value"].iloc[0] == math.pi
        assert b"\r\n" not in store.read_bytes("table.csv")

    def test_invalid_json(self, store):
        """Test unreadable JSON is an artifact error."""
        store.write_text("broken.json", "{not json")
        with pytest.raises(ArtifactError):
            store.read_json("broken.json")

    def test_missing_artifact(self, store):
        """Test reading an absent artifact."""
        with pytest.raises(ArtifactError):
            store.read_bytes("absent.bin")


class TestManifest:
    """Test the run manifest."""

    def test_manifest_hashes(self, store):
        """Test artifacts are listed with hashes that verify."""
        store.write_text("a.txt", "a")
        manifest = store.write_manifest("simulate", "abc", 1.5)
        assert manifest["command"] == "simulate"
        assert manifest["config_hash"] == "abc"
        assert set(manifest["versions"]) >= {"python", "numpy", "scipy", "pandas", "pydantic", "networkx"}
        assert list(manifest["artifacts"]) == ["a.txt"]
        assert store.verify_manifest() is None

    def test_manifest_merges_earlier_runs(self, tmp_path):
        """Test a later command keeps the artifacts of earlier ones."""
        first = ArtifactStore(tmp_path)
        first.write_text("field.bin", "x")
        first.write_manifest("simulate", "h", 0.1)
        second = ArtifactStore(tmp_path)
        second.write_text("scattering.csv", "y")
        manifest = second.write_manifest("scatter", "h", 0.1)
        assert sorted(manifest["artifacts"]) == ["field.bin", "scattering.csv"]
        assert (tmp_path / "manifest.bak1").exists()

    def test_tampering_detected(self, store):
        """Test a modified artifact no longer matches its hash."""
        store.write_text("a.txt", "a")
        store.write_manifest("simulate", "h", 0.0)
        store.path("a.txt").write_text("changed")
        assert store.verify_manifest() == "a.txt"


class TestSnapshots:
    """Test field snapshots."""

    def test_round_trip(self, store, nonlinear_field):
        """Test a saved field decodes to identical arrays and metadata."""
        save_field(store, "field.bin", nonlinear_field)
        restored = load_field(store, "field.bin")
        np.testing.assert_array_equal(restored.v, nonlinear_field.v)
        np.testing.assert_array_equal(restored.t_grid, nonlinear_field.t_grid)
        assert restored.metric.c_coeffs == nonlinear_field.metric.c_coeffs
        assert restored.epsilon == nonlinear_field.epsilon
        assert restored.sample(5.0, 5.0) == nonlinear_field.sample(5.0, 5.0)

    def test_truncated_payload(self, minkowski_field):
        """Test a short payload is rejected."""
        data = encode_field(minkowski_field)
        with pytest.raises(ArtifactError):
            decode_field(data[:-8])

    def test_corrupt_header(self):
        """Test garbage input is rejected."""
        with pytest.raises(ArtifactError):
            decode_field(b"\x05\x00\x00\x00\x00\x00\x00\x00abc")

    def test_slices(self, minkowski_field):
        """Test one block of rows per requested time inside the grid."""
        frame = slices_frame(minkowski_field, [0.0, 12.0, 100.0])
        assert list(frame.columns) == ["t", "r", "u", "u_t", "u_r"]
        assert sorted(frame["t"].unique()) == [0.0, 12.0]
        assert len(frame) == 2 * len(minkowski_field.r_grid)

    def test_no_slices(self, minkowski_field):
        """Test an empty request gives an empty table with the header."""
        frame = slices_frame(minkowski_field, [])
        assert frame.empty
        assert list(frame.columns) == ["t", "r", "u", "u_t", "u_r"]


class TestPipeline:
    """Test the command dependency graph."""

    def test_every_command_is_a_node(self):
        """Test commands and artifacts carry their kind."""
        for command in COMMAND_ARTIFACTS:
            assert PIPELINE.nodes[command]["kind"] == "command"
        assert PIPELINE.nodes["field.bin"]["kind"] == "artifact"

    def test_required_artifacts(self):
        """Test the scan inputs."""
        assert required_artifacts("scan") == ["classify.json", "field.bin", "scattering.csv", "scattering.json"]
        assert required_artifacts("verify-kirchhoff") == []

    def test_upstream_commands(self):
        """Test transitive producers."""
        assert upstream_commands("scan") == ["classify", "scatter", "simulate"]
        assert upstream_commands("simulate") == []
        assert len(upstream_commands("report")) == len(COMMAND_ARTIFACTS) - 1

    def test_order(self):
        """Test producers come before consumers and report comes last."""
        order = pipeline_order()
        assert sorted(order) == sorted(COMMAND_ARTIFACTS)
        assert order.index("simulate") < order.index("scatter") < order.index("verify-interior")
        assert order.index("classify") < order.index("scan")
        assert order[-1] == "report"

    def test_missing_prerequisite(self, store):
        """Test the first missing input is named."""
        with pytest.raises(DependencyError) as excinfo:
            check_prerequisites("scatter", store)
        assert excinfo.value.missing == "field.bin"
        assert excinfo.value.command == "scatter"

    def test_prerequisites_present(self, store):
        """Test nothing is raised once inputs exist."""
        store.write_text("field.bin", "x")
        check_prerequisites("scatter", store)

    def test_invalid_command(self):
        """Test unknown command names."""
        with pytest.raises(InputDomainError):
            required_artifacts("plot")
