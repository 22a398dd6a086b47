"""
ScatteringData: Ahat with the limit profiles A and A1 it was built from.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..errors import ArtifactError
from .grid import GridFunction1D

logger = logging.getLogger(__name__)

A1_LOWER = -3.0
A1_UPPER = -1.0
CSV_COLUMNS = ["q", "a_hat", "a_raw", "a1"]


@dataclass(frozen=True, eq=False)
class ScatteringData:
    """
    Radial scattering data on a common q grid.

    Attributes:
        a_hat: Ahat, zero for q >= R
        a_raw: Limit A, zero for q >= R
        a1: Limit A1 (about -2 near the support edge)
        epsilon: Data amplitude
        delta: Gauge parameter
        R: Data support radius
    """

    a_hat: GridFunction1D
    a_raw: GridFunction1D
    a1: GridFunction1D
    epsilon: float
    delta: float
    R: float
    warnings: Tuple[str, ...] = ()

    @property
    def q_grid(self) -> np.ndarray:
        return self.a_hat.q_grid

    @property
    def a2(self) -> GridFunction1D:
        """A2 from A1 A2 = -2A."""
        return self.a_raw.with_values(-2.0 * self.a_raw.values / self.a1.values)

    def a1_in_range(self, tolerance: float = 0.1) -> bool:
        """True when every A1 value lies in [-3, -1] up to tolerance."""
        v = self.a1.values
        return bool(np.all(v >= A1_LOWER - tolerance) and np.all(v <= A1_UPPER + tolerance))

    @property
    def max_abs_a_hat(self) -> float:
        return float(np.max(np.abs(self.a_hat.values)))

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------

    def to_frame(self) -> pd.DataFrame:
        """Table with header q,a_hat,a_raw,a1."""
        return pd.DataFrame({
            "q": self.q_grid,
            "a_hat": self.a_hat.values,
            "a_raw": self.a_raw.values,
            "a1": self.a1.values,
        }, columns=CSV_COLUMNS)

    def sidecar(self) -> Dict[str, Any]:
        """JSON sidecar content."""
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "R": self.R,
            "tail_exponent": self.a_hat.tail_exponent,
            "a_raw_tail_exponent": self.a_raw.tail_exponent,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, sidecar: Dict[str, Any]) -> "ScatteringData":
        """
        Rebuild ScatteringData from its CSV table and JSON sidecar.

        Raises:
            ArtifactError: If the table does not carry the expected columns
        """
        if list(frame.columns) != CSV_COLUMNS:
            raise ArtifactError(f"scattering table must have columns {CSV_COLUMNS}, got {list(frame.columns)}")
        try:
            R = float(sidecar["R"])
            q = frame["q"].to_numpy(dtype=float)
            tail: Optional[float] = sidecar.get("tail_exponent")
            raw_tail: Optional[float] = sidecar.get("a_raw_tail_exponent", tail)
            return cls(
                a_hat=GridFunction1D(q, frame["a_hat"].to_numpy(dtype=float), tail, R),
                a_raw=GridFunction1D(q, frame["a_raw"].to_numpy(dtype=float), raw_tail, R),
                a1=GridFunction1D(q, frame["a1"].to_numpy(dtype=float), 0.0, None),
                epsilon=float(sidecar["epsilon"]),
                delta=float(sidecar["delta"]),
                R=R,
                warnings=tuple(sidecar.get("warnings", [])),
            )
        except KeyError as e:
            raise ArtifactError(f"scattering sidecar is missing key {e}") from e

    @classmethod
    def from_a_hat(
        cls, a_hat: GridFunction1D, epsilon: float, delta: float, R: float
    ) -> "ScatteringData":
        """Wrap a known Ahat in the trivial gauge (A = Ahat, A1 = -2)."""
        a1 = GridFunction1D.constant(a_hat.q_grid, -2.0)
        return cls(a_hat=a_hat, a_raw=a_hat, a1=a1, epsilon=epsilon, delta=delta, R=R)
