"""Exception types shared by all majorant modules."""


class MajorantError(Exception):
    """Base class for all majorant domain errors."""


class InvalidInput(MajorantError):
    """Raised when arguments are malformed (wrong shape, non-finite, out of range)."""


class MajorizationViolation(MajorantError):
    """Raised when a required majorization/dominance precondition fails."""


class TraceMismatch(MajorantError):
    """Raised when two quantities that must share a total sum do not."""


class DistributionMismatch(MajorantError):
    """Raised when two spectra/value profiles are not matched closely enough."""
