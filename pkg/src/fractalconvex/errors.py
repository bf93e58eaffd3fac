"""Exception hierarchy shared by every module."""


class FractalConvexError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FractalConvexError, ValueError):
    """An argument lies outside the domain of the operation."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class InputError(FractalConvexError, ValueError):
    """Malformed or inconsistent input (bad JSON, dimension mismatch, ...)."""


class UnsupportedExponentError(FractalConvexError):
    """A fractal-monomial exponent falls outside the closed-form algebra."""


class UnsupportedFamilyError(FractalConvexError):
    """The requested evaluation is not reducible by the closed-form engine."""


class NumericalError(FractalConvexError):
    """NaN or overflow produced during evaluation."""


class WitnessError(FractalConvexError):
    """A stored witness cannot be re-verified (e.g. it lies outside the region)."""
