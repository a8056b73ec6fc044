"""Error and warning types raised by the lab."""


class DnlsLabError(Exception):
    """Base class for all lab errors."""


class InvalidParameterError(DnlsLabError, ValueError):
    """A parameter lies outside its admissible range."""


class GridMismatchError(DnlsLabError, ValueError):
    """Inputs live on incompatible grids."""


class CompatibilityViolation(DnlsLabError, ValueError):
    """Initial and boundary data disagree at the corner x=0, t=0."""


class BandlimitViolation(DnlsLabError, ValueError):
    """A field carries energy outside the band the resonant sums require."""


class WindowViolation(DnlsLabError, ValueError):
    """Parameters fall outside an estimate's admissible window."""


class InsufficientRangeError(DnlsLabError):
    """Too few dyadic levels carry energy for a slope fit."""


class NumericalFailure(DnlsLabError):
    """A solver failed numerically."""


class BlowupDetected(NumericalFailure):
    """The solution became non-finite or exceeded the blowup threshold."""

    def __init__(self, time: float, max_modulus: float) -> None:
        super().__init__(f"blowup detected at t={time:.6g} (max|u|={max_modulus:.3g})")
        self.time = time
        self.max_modulus = max_modulus


class NoContraction(NumericalFailure):
    """The Picard iteration did not contract."""


class OuterNoContraction(NumericalFailure):
    """The outer phase fixed point did not converge."""


class TruncationWarning(UserWarning):
    """Data does not decay before the edge of its grid."""


class BandwidthWarning(UserWarning):
    """A frequency integral is truncated while its integrand is still significant."""
