"""Exception types shared across the package."""


class TetraError(Exception):
    """Base class for all package errors."""


class NotDivisible(TetraError):
    """Exact Laurent division has no quotient."""


class PoleAtZero(TetraError):
    """A variable with a negative exponent was bound to zero."""


class NonTerminating(TetraError):
    """An infinite product does not terminate under the series caps."""


class OutOfRange(TetraError):
    """An argument lies outside its admissible range."""


class CutoffExceeded(TetraError):
    """A creation operator would push an occupation above the Fock cutoff."""


class NotStabilized(TetraError):
    """A truncated trace did not stabilize before the maximal cutoff."""


class KernelDimensionError(TetraError):
    """A generator kernel is not one-dimensional."""


class EmptySector(TetraError):
    """A TASEP sector contains no configuration."""


class NotReduced(TetraError):
    """A word in simple transpositions is not reduced."""


class DegeneratePoint(TetraError):
    """Evaluation points coincide where they must be distinct."""


class ParseError(TetraError):
    """Malformed textual input."""
