"""
Error hierarchy for wnc-scatter.

Every error raised on purpose by the library derives from WNCError so the
command line can map failures to exit codes without catching unrelated
exceptions.
"""


class WNCError(Exception):
    """Base class for all wnc-scatter errors."""
    pass


class InputDomainError(WNCError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""
    pass


class ConfigurationError(WNCError):
    """Raised when configuration keys are missing, malformed or out of range."""
    pass


class CFLViolationError(ConfigurationError):
    """Raised when the leapfrog step exceeds the CFL limit during a run."""
    pass


class SpeedDegeneracyError(WNCError):
    """Raised when the radial sound speed degenerates (c(u) <= 0 or the cone launch is singular)."""
    pass


class FieldRangeError(WNCError):
    """Raised when a field is queried outside its (t, r) grid rectangle."""
    pass


class ExtrapolationError(WNCError):
    """Raised when a grid function is evaluated below its grid without a tail model."""
    pass


class GaugeDegeneracyError(WNCError):
    """Raised when A1 reaches zero so the gauge map is undefined."""
    pass


class CausticError(WNCError):
    """Raised when q_r leaves its admissible range along a characteristic."""
    pass


class ExtractionError(WNCError):
    """Raised when the limit extraction cannot be carried out on the given traces."""
    pass


class QuadratureDomainError(WNCError):
    """Raised when a quadrature node falls outside a sampler's validity region."""
    pass


class DependencyError(WNCError):
    """Raised when a command's prerequisite artifact is missing."""

    def __init__(self, command: str, missing: str):
        self.command = command
        self.missing = missing
        super().__init__(f"Command '{command}' requires artifact '{missing}', which was not found")


class ArtifactError(WNCError):
    """Raised when an artifact cannot be written or read back."""
    pass


__all__ = [
    "WNCError",
    "InputDomainError",
    "ConfigurationError",
    "CFLViolationError",
    "SpeedDegeneracyError",
    "FieldRangeError",
    "ExtrapolationError",
    "GaugeDegeneracyError",
    "CausticError",
    "ExtractionError",
    "QuadratureDomainError",
    "DependencyError",
    "ArtifactError",
]
