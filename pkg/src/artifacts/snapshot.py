"""
Binary field snapshot and time-slice tables.

Layout of the snapshot container: an 8-byte little-endian header length,
a UTF-8 JSON header, then t_grid, r_grid and v as little-endian float64
in row-major order.
"""

import json
import logging
import struct
from typing import Sequence

import numpy as np
import pandas as pd

from ..errors import ArtifactError
from ..models.metric import MetricModel
from ..wave_solver.field import RadialField
from .store import ArtifactStore

logger = logging.getLogger(__name__)

FORMAT_NAME = "wnc-field"
FORMAT_VERSION = 1
DTYPE = "<f8"
SLICE_COLUMNS = ["t", "r", "u", "u_t", "u_r"]


def encode_field(field: RadialField) -> bytes:
    """Serialize a field into the snapshot container."""
    header = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "dtype": DTYPE,
        "n_t": int(len(field.t_grid)),
        "n_r": int(len(field.r_grid)),
        "dt": field.dt,
        "dr": field.dr,
        "epsilon": field.epsilon,
        "R": field.R,
        "cfl_max": field.cfl_max,
        "step_dt": field.step_dt,
        "metric": field.metric.to_dict(),
    }
    head = json.dumps(header, sort_keys=True).encode("utf-8")
    body = b"".join(
        np.ascontiguousarray(a, dtype=DTYPE).tobytes(order="C")
        for a in (field.t_grid, field.r_grid, field.v)
    )
    return struct.pack("<Q", len(head)) + head + body


def decode_field(data: bytes) -> RadialField:
    """
    Parse a snapshot container.

    Raises:
        ArtifactError: If the header or payload is malformed
    """
    try:
        (length,) = struct.unpack_from("<Q", data, 0)
        header = json.loads(data[8:8 + length].decode("utf-8"))
    except (struct.error, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ArtifactError(f"corrupt snapshot header: {e}") from e
    if header.get("format") != FORMAT_NAME or header.get("dtype") != DTYPE:
        raise ArtifactError(f"unsupported snapshot format {header.get('format')!r}/{header.get('dtype')!r}")
    n_t, n_r = int(header["n_t"]), int(header["n_r"])
    payload = np.frombuffer(data, dtype=DTYPE, offset=8 + length)
    if payload.size != n_t + n_r + n_t * n_r:
        raise ArtifactError(f"snapshot payload has {payload.size} values, expected {n_t + n_r + n_t * n_r}")
    t_grid = payload[:n_t].copy()
    r_grid = payload[n_t:n_t + n_r].copy()
    v = payload[n_t + n_r:].reshape(n_t, n_r).copy()
    return RadialField(
        t_grid=t_grid,
        r_grid=r_grid,
        v=v,
        dt=float(header["dt"]),
        dr=float(header["dr"]),
        epsilon=float(header["epsilon"]),
        R=float(header["R"]),
        metric=MetricModel.from_dict(header["metric"]),
        cfl_max=float(header["cfl_max"]),
        step_dt=header.get("step_dt"),
    )


def save_field(store: ArtifactStore, name: str, field: RadialField) -> None:
    store.write_bytes(name, encode_field(field))


def load_field(store: ArtifactStore, name: str) -> RadialField:
    field = decode_field(store.read_bytes(name))
    logger.info(f"Loaded field {field.v.shape} from {store.path(name)}")
    return field


def slices_frame(field: RadialField, slice_times: Sequence[float]) -> pd.DataFrame:
    """
    u, u_t and u_r on every radial node at each requested time.

    Times outside the stored range are skipped with a warning.
    """
    frames = []
    r = field.r_grid
    for t in slice_times:
        if not field.t_grid[0] <= t <= field.t_max:
            logger.warning(f"slice time {t} outside [{field.t_grid[0]}, {field.t_max}], skipped")
            continue
        tt = np.full_like(r, t)
        frames.append(pd.DataFrame({
            "t": tt,
            "r": r,
            "u": field.sample(tt, r, "u"),
            "u_t": field.sample(tt, r, "u_t"),
            "u_r": field.sample(tt, r, "u_r"),
        }, columns=SLICE_COLUMNS))
    if not frames:
        return pd.DataFrame(columns=SLICE_COLUMNS)
    return pd.concat(frames, ignore_index=True)
