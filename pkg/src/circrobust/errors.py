"""Exception hierarchy shared by every module of the package."""


class CircularError(Exception):
    """Base class for all package-specific errors."""


class InvalidAngle(CircularError, ValueError):
    """An angle was NaN or infinite."""


class DegenerateResultant(CircularError, ArithmeticError):
    """The mean resultant length is too small for a mean direction to exist."""


class NonUniqueMedian(CircularError):
    """The Fréchet median set is the whole circle or several disjoint arcs."""


class Explosion(CircularError):
    """A dispersion estimate reached the supremum of its model family."""


class OutOfRange(CircularError, ValueError):
    """A numeric argument lies outside the domain of a function."""


class BesselOverflow(CircularError, OverflowError):
    """An unscaled modified Bessel function overflowed double precision."""


class DepthExceeded(CircularError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NoSignChange(CircularError, ValueError):
    """A root bracket does not straddle a sign change."""


class MaxIterExceeded(CircularError, ArithmeticError):
    """An iterative solver hit its iteration budget."""


class ParseError(CircularError, ValueError):
    """An angle file could not be parsed.

    Attributes
    ----------
    line : int or None
        1-based line number of the offending input, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyDataset(CircularError, ValueError):
    """An input contained no angles."""


class DatasetUnavailable(CircularError, FileNotFoundError):
    """A named dataset is not bundled and no local copy was configured."""
