"""
Exception types shared by the services and the command handlers.
"""


class NeighborlyError(Exception):
    """Base class for every error raised by the audit toolkit."""


class InvalidInputError(NeighborlyError, ValueError):
    """A precondition of an operation was violated by its input."""


class RingMismatchError(InvalidInputError):
    """Two class elements from different rings were combined."""


class NonNormalMonomialError(InvalidInputError):
    """A monomial outside the ring's normal form was supplied."""


class DegenerateFrameError(InvalidInputError):
    """A tangent frame does not have full rank."""


class NonInvertibleError(NeighborlyError, ArithmeticError):
    """A class element with zero constant term cannot be inverted."""


class DegeneracyError(NeighborlyError):
    """A linear system has no isolated solution; carries the singular values."""

    def __init__(self, message, spectrum=None):
        super().__init__(message)
        self.spectrum = list(spectrum) if spectrum is not None else []
