"""
Radial initial data (u, u_t)|_{t=0} = (eps u0, eps u1) built from bump families.
"""

from enum import Enum
from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BumpFamily(str, Enum):
    """Named smooth compactly supported radial profiles."""
    BUMP = "bump"            # a exp(-1/(1 - (r/R)^2))
    WIDE_BUMP = "wide_bump"  # a exp(-(r/R)^2 / (1 - (r/R)^2))
    ZERO = "zero"


class BumpProfile(BaseModel):
    """A bump family with its amplitude; the support radius comes from InitialData."""

    model_config = ConfigDict(frozen=True, use_enum_values=True)

    family: BumpFamily = Field(default=BumpFamily.BUMP, description="Profile family")
    amplitude: float = Field(default=1.0, description="Profile amplitude a")

    def _shape(self, r, R: float):
        r = np.abs(np.asarray(r, dtype=float))
        s = (r / R) ** 2
        inside = s < 1.0
        f = np.zeros_like(s)
        if self.family == BumpFamily.ZERO.value or self.amplitude == 0.0:
            return f, s, inside
        si = s[inside]
        if self.family == BumpFamily.BUMP.value:
            f[inside] = self.amplitude * np.exp(-1.0 / (1.0 - si))
        else:
            f[inside] = self.amplitude * np.exp(-si / (1.0 - si))
        return f, s, inside

    def value(self, r, R: float):
        """Profile value at |r| (vectorized)."""
        f, _, _ = self._shape(r, R)
        return f if f.ndim else float(f)

    def derivative(self, r, R: float):
        """d/dr of the profile at r >= 0 (vectorized)."""
        r_arr = np.abs(np.asarray(r, dtype=float))
        f, s, inside = self._shape(r_arr, R)
        d = np.zeros_like(f)
        # both families share f'(s) = -f / (1 - s)^2
        d[inside] = -f[inside] / (1.0 - s[inside]) ** 2 * 2.0 * r_arr[inside] / R ** 2
        return d if d.ndim else float(d)


class InitialData(BaseModel):
    """
    Radial data pair (u0, u1) supported in r < R.

    Methods v0, v0_prime and v1 give the odd extensions of r u0 and r u1
    per unit amplitude, used by the d'Alembert oracle.
    """

    model_config = ConfigDict(frozen=True)

    u0: BumpProfile = Field(default_factory=BumpProfile, description="Displacement profile")
    u1: BumpProfile = Field(
        default_factory=lambda: BumpProfile(family=BumpFamily.ZERO, amplitude=0.0),
        description="Velocity profile"
    )
    R: float = Field(default=1.0, gt=0.0, description="Support radius of both profiles")

    @model_validator(mode="after")
    def validate_profiles(self):
        """Both profiles must be finite at the origin."""
        if not np.isfinite(self.u0.amplitude) or not np.isfinite(self.u1.amplitude):
            raise ValueError("profile amplitudes must be finite")
        return self

    @property
    def is_zero(self) -> bool:
        """True when both profiles vanish identically."""
        return all(
            p.family == BumpFamily.ZERO.value or p.amplitude == 0.0 for p in (self.u0, self.u1)
        )

    def u0_value(self, r):
        return self.u0.value(r, self.R)

    def u1_value(self, r):
        return self.u1.value(r, self.R)

    def v0(self, rho):
        """Odd extension of r u0(r)."""
        rho = np.asarray(rho, dtype=float)
        out = rho * self.u0.value(rho, self.R)
        return out if np.ndim(out) else float(out)

    def v0_prime(self, rho):
        """Derivative of v0, an even function: u0(|rho|) + |rho| u0'(|rho|)."""
        a = np.abs(np.asarray(rho, dtype=float))
        out = self.u0.value(a, self.R) + a * self.u0.derivative(a, self.R)
        return out if np.ndim(out) else float(out)

    def v1(self, rho):
        """Odd extension of r u1(r)."""
        rho = np.asarray(rho, dtype=float)
        out = rho * self.u1.value(rho, self.R)
        return out if np.ndim(out) else float(out)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    @classmethod
    def standard_bump(cls, amplitude: float = 1.0, R: float = 1.0) -> "InitialData":
        """u0 = amplitude * exp(-1/(1-(r/R)^2)), u1 = 0."""
        return cls(u0=BumpProfile(family=BumpFamily.BUMP, amplitude=amplitude), R=R)

    @classmethod
    def zero(cls, R: float = 1.0) -> "InitialData":
        """Trivial data."""
        off = BumpProfile(family=BumpFamily.ZERO, amplitude=0.0)
        return cls(u0=off, u1=off, R=R)
