"""Exception hierarchy shared by all specflow modules."""


class SpecflowError(Exception):
    """Base class for every error raised by specflow."""


class DimensionError(SpecflowError, ValueError):
    """Vectors, operators or growth functions disagree on the truncation size."""


class NotInvertible(SpecflowError):
    """An operator required to be invertible has an eigenvalue within the margin."""


class EndpointNotInvertible(NotInvertible):
    """An endpoint or asymptotic operator of a path is not invertible."""


class JunctionNotInvertible(NotInvertible):
    """The shared operator at a concatenation junction is not invertible."""


class ShiftOnSpectrum(SpecflowError):
    """A spectral shift parameter lies on (or too close to) the spectrum."""


class WindowTooTight(SpecflowError):
    """No point of the requested window keeps a safe distance to the spectrum."""


class TailNotSettled(SpecflowError):
    """The tail of an infinite path is not close enough to its asymptote."""


class MismatchAtJunction(SpecflowError):
    """Two paths to be glued do not agree at the junction time."""


class PathMismatch(SpecflowError, ValueError):
    """Two paths cannot be combined (different interval kind or window)."""


class PerturbationTooLarge(SpecflowError):
    """The perturbation violates ``||P|| * ||T^-1|| < 1``."""


class ValidationError(SpecflowError, ValueError):
    """A scenario document failed validation.

    Parameters
    ----------
    field : str
        Dotted path to the offending field, e.g. ``"path.matrices[2]"``.
    message : str
        Human readable reason.
    """

    def __init__(self, field, message):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")
