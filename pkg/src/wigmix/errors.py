"""Exception types raised across the library."""


class WigmixError(Exception):
    """Base class for all library errors."""


class SingularCovariance(WigmixError):
    """A covariance matrix is singular (or numerically so) where an inverse is needed."""


class EmptyMixture(WigmixError):
    """An operation removed every Gaussian peak from a mixture."""


class InvalidState(WigmixError):
    """State parameters do not define a valid state (e.g. undefined normalization)."""


class Unphysical(WigmixError):
    """State or channel parameters violate a physicality constraint."""


class Unsupported(WigmixError):
    """The requested construction is outside the supported parameter regime."""


class ZeroProbabilityOutcome(WigmixError):
    """Conditioning was requested on an outcome of (numerically) zero probability."""


class NumericalInconsistency(WigmixError):
    """A quantity that must be real/nonnegative came out significantly complex/negative."""


class SamplingStall(WigmixError):
    """Rejection sampling failed to accept within the iteration budget."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class SchemaError(WigmixError):
    """A circuit program document violates the program schema."""
