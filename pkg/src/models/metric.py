"""
Metric model for the quasilinear wave equation g^{ab}(u) d_a d_b u = 0.

The model carries the radial sound speed polynomial c(u) and the
linearization coefficients g0 = d/du g^{ab}(u) at u = 0.
"""

from typing import Any, Dict, List

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


SYMMETRY_TOLERANCE = 1e-14


class MetricModel(BaseModel):
    """
    Coefficient family g^{ab}(u), its linearization g0 and the radial speed c(u).

    The radial flag marks metrics with g^{00} = -1, g^{0i} = 0 and
    g^{ij} = c(u) delta^{ij}; only those can be simulated by the radial solver.
    """

    model_config = ConfigDict(frozen=True)

    c_coeffs: List[float] = Field(
        default_factory=lambda: [1.0],
        description="Coefficients of c(u) = c_coeffs[0] + c_coeffs[1] u + ..., lowest order first"
    )

    g0: List[List[float]] = Field(
        default_factory=lambda: [[0.0] * 4 for _ in range(4)],
        description="Symmetric 4x4 linearization coefficients g0^{ab}"
    )

    radial: bool = Field(
        default=True,
        description="True when g^{00} = -1, g^{0i} = 0 and g^{ij} = c(u) delta^{ij}"
    )

    @model_validator(mode="before")
    @classmethod
    def derive_radial_g0(cls, data: Any) -> Any:
        """Fill g0 = diag(0, c1, c1, c1) for radial metrics given without g0."""
        if isinstance(data, dict) and data.get("radial", True) and data.get("g0") is None:
            coeffs = list(data.get("c_coeffs") or [1.0])
            c1 = float(coeffs[1]) if len(coeffs) > 1 else 0.0
            data = dict(data)
            data["g0"] = [[c1 if (i == j and i > 0) else 0.0 for j in range(4)] for i in range(4)]
        return data

    @field_validator("c_coeffs")
    @classmethod
    def validate_c_coeffs(cls, v):
        """c(0) must be 1 so the metric is Minkowski at u = 0."""
        if not v:
            raise ValueError("c_coeffs cannot be empty")
        if v[0] != 1.0:
            raise ValueError(f"c_coeffs[0] must be 1, got {v[0]}")
        return [float(c) for c in v]

    @field_validator("g0")
    @classmethod
    def validate_g0(cls, v):
        """g0 must be a symmetric 4x4 array with g0[0][0] = 0."""
        arr = np.asarray(v, dtype=float)
        if arr.shape != (4, 4):
            raise ValueError(f"g0 must be 4x4, got shape {arr.shape}")
        if np.max(np.abs(arr - arr.T)) > SYMMETRY_TOLERANCE:
            raise ValueError("g0 must be symmetric")
        if arr[0, 0] != 0.0:
            raise ValueError("g0[0][0] must vanish since g^{00} is fixed to -1")
        return arr.tolist()

    @model_validator(mode="after")
    def validate_radial_structure(self):
        """Radial metrics need g0[i][j] = c1 delta_ij and g0[0][i] = 0."""
        if self.radial:
            expected = np.diag([0.0, self.c1, self.c1, self.c1])
            if np.max(np.abs(self.g0_array - expected)) > SYMMETRY_TOLERANCE:
                raise ValueError(
                    "radial metric requires g0 = diag(0, c1, c1, c1) with c1 = c_coeffs[1]"
                )
        return self

    @property
    def c1(self) -> float:
        """Linear coefficient of c(u)."""
        return self.c_coeffs[1] if len(self.c_coeffs) > 1 else 0.0

    @property
    def g0_array(self) -> np.ndarray:
        """g0 as a float array."""
        return np.asarray(self.g0, dtype=float)

    def speed_squared(self, u):
        """Evaluate c(u), vectorized over arrays."""
        return P.polyval(u, self.c_coeffs)

    def speed_squared_derivative(self, u):
        """Evaluate c'(u), vectorized over arrays."""
        if len(self.c_coeffs) == 1:
            return np.zeros_like(np.asarray(u, dtype=float))
        return P.polyval(u, P.polyder(self.c_coeffs))

    @property
    def is_minkowski(self) -> bool:
        """True when c is identically 1."""
        return all(c == 0.0 for c in self.c_coeffs[1:])

    @classmethod
    def minkowski(cls) -> "MetricModel":
        """Flat metric: c = 1, g0 = 0."""
        return cls(c_coeffs=[1.0], radial=True)

    @classmethod
    def radial_model(cls, c_coeffs: List[float]) -> "MetricModel":
        """Radial metric with speed polynomial c(u) and derived g0."""
        return cls(c_coeffs=list(c_coeffs), radial=True)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the metric to a plain dictionary.

        Returns:
            Dict[str, Any]: JSON-ready representation
        """
        return {"c_coeffs": list(self.c_coeffs), "g0": [list(row) for row in self.g0], "radial": self.radial}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MetricModel":
        """Create a MetricModel from to_dict output."""
        return cls(**data)

    def __str__(self) -> str:
        kind = "radial" if self.radial else "general"
        return f"MetricModel({kind}, c_coeffs={self.c_coeffs})"
