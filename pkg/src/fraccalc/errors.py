"""Exception hierarchy for the fractional-calculus engine.

The CLI maps these onto exit codes: malformed input, geometry, domain and
parse problems are *usage errors* (exit 1); convergence and accuracy problems
are *numeric errors* (exit 2); verification-suite failures are reported via
exit 3 without a dedicated exception type.
"""

from __future__ import annotations

__all__ = [
    "FracCalcError",
    "InputError",
    "DomainError",
    "GeometryError",
    "GammaPoleError",
    "NotAFunction",
    "PoleAtEvaluationPoint",
    "ConvergenceError",
    "AccuracyError",
    "BoundaryError",
    "DCError",
    "ParseError",
]


class FracCalcError(Exception):
    """Base class for every error raised by this library."""


class InputError(FracCalcError, ValueError):
    """Malformed or out-of-range input: bad parameter ranges, bad config."""


class DomainError(FracCalcError, ValueError):
    """Evaluation at a point where the quantity is undefined (e.g. a branch point)."""


class GeometryError(FracCalcError, ValueError):
    """Ill-posed geometric configuration.

    Raised for poles lying on a cut, tangential or vertex-grazing crossings,
    evaluation points at polyline kinks, degenerate curves, and similar
    situations where a transversal-crossing count is not well defined.
    """


class GammaPoleError(FracCalcError, ValueError):
    """A formula's Gamma-function prefactor is evaluated at a pole.

    Negative-integer orders must take the n-fold-integral path instead of the
    generic fractional formulas.
    """


class NotAFunction(FracCalcError, ValueError):
    """The requested limiting kernel is a distribution, not a pointwise map.

    The zero-regularization limit of the kernel at non-negative integer order
    is a delta-function derivative; callers should use the integer fast path
    of the real-line operator instead.
    """


class PoleAtEvaluationPoint(FracCalcError, ValueError):
    """The evaluation point coincides with a pole of the function."""


class ConvergenceError(FracCalcError, ArithmeticError):
    """An integral's convergence preconditions failed or its tail never settled."""


class AccuracyError(FracCalcError, ArithmeticError):
    """Quadrature finished but could not meet the requested tolerance.

    Attributes
    ----------
    est_error:
        Best available error estimate at the point of failure, or ``None``.
    """

    def __init__(self, message: str, est_error: float | None = None) -> None:
        super().__init__(message)
        self.est_error = est_error


class BoundaryError(FracCalcError, ValueError):
    """Sampled data does not decay at the grid boundary and no window was applied."""


class DCError(FracCalcError, ValueError):
    """Strict zero-frequency handling was requested and the data has nonzero mean."""


class ParseError(FracCalcError, ValueError):
    """Expression syntax error.

    Attributes
    ----------
    offset:
        Byte offset into the source text where parsing failed.
    expected:
        Tuple of token descriptions that would have been acceptable.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()) -> None:
        super().__init__(message)
        self.offset = offset
        self.expected = tuple(expected)
