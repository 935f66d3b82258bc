"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class HadamardError(Exception):
    """Base class for all toolkit errors."""


class ZeroInverse(HadamardError, ZeroDivisionError):
    pass


class ArityMismatch(HadamardError, ValueError):
    pass


class ShapeMismatch(HadamardError, ValueError):
    pass


class ZeroPolynomial(HadamardError, ValueError):
    pass


class PolySyntaxError(HadamardError, ValueError):
    """Malformed polynomial text; ``position`` is the 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(HadamardError, ValueError):
    pass


class NoPointFound(HadamardError):
    pass


class UnsupportedRepresentation(HadamardError):
    pass


class SingularPoint(HadamardError):
    pass


class DimensionMismatch(HadamardError):
    pass


class SingularTransform(HadamardError, ValueError):
    pass


class UndefinedProduct(HadamardError):
    pass


class OnDelta(HadamardError, ValueError):
    pass


class EmptyProduct(HadamardError):
    """Every sampled tuple had an undefined Hadamard product.

    ``report`` carries the all-degenerate DimensionReport when one exists.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class PreconditionViolated(HadamardError, ValueError):
    pass


class CoordinateDegenerate(HadamardError, ValueError):
    pass


class SamplingExhausted(HadamardError):
    pass


class TooLarge(HadamardError, ValueError):
    pass


class DegreeTooSmall(HadamardError, ValueError):
    pass


class VarietyFileError(HadamardError, ValueError):
    pass
