"""Exception types raised across the package."""


class SparseCircError(Exception):
    """Base class for all package errors."""


class CapacityExceeded(SparseCircError):
    """The instance is larger than the operation's desk-scale limit."""


class FormatError(SparseCircError, ValueError):
    """Malformed instance or certificate text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroInverse(SparseCircError, ZeroDivisionError):
    pass


class BothZero(SparseCircError, ValueError):
    pass


class DegreeZeroModulus(SparseCircError, ValueError):
    pass


class NotSquare(SparseCircError, ValueError):
    pass


class LengthMismatch(SparseCircError, ValueError):
    pass


class AlreadyFixed(SparseCircError, ValueError):
    pass


class EmptySystem(SparseCircError, ValueError):
    pass


class InterpolationFailed(SparseCircError):
    pass


class ZeroF(SparseCircError, ValueError):
    pass


class TooManyEntries(SparseCircError, ValueError):
    pass


class ZeroWitness(SparseCircError, ValueError):
    pass


class DegreeOutOfRange(SparseCircError, ValueError):
    pass


class ZeroConstantTerm(SparseCircError, ValueError):
    pass


class InvalidWitness(SparseCircError, ValueError):
    pass


class DigestMismatch(SparseCircError, ValueError):
    pass
