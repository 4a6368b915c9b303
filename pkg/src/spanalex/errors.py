"""Exception hierarchy.

Every error carries a stable ``code`` string and an ``exit_code`` used by the
command line: 1 for domain errors, 2 for verification failures.
"""
from __future__ import annotations


class SpanAlexError(Exception):
    code = "error"
    exit_code = 1


class DomainError(SpanAlexError):
    """Input is outside the domain of an operation."""


class VerificationFailure(SpanAlexError):
    code = "verification_failure"
    exit_code = 2


class ZeroEvaluationPoint(DomainError):
    code = "zero_evaluation_point"


class ZeroPolynomial(DomainError):
    code = "zero_polynomial"


class DivisionByZero(DomainError):
    code = "division_by_zero"


class DimensionMismatch(DomainError):
    code = "dimension_mismatch"


class TangleSyntaxError(DomainError):
    """Parse failure with the offending position and the tokens expected there."""

    code = "syntax_error"

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class BoundaryMismatch(DomainError):
    code = "boundary_mismatch"

    def __init__(self, message: str, first=None, then=None):
        self.first = first
        self.then = then
        super().__init__(message)


class InvalidInput(DomainError):
    code = "invalid_input"


class NotAKnot(DomainError):
    code = "not_a_knot"


class NotRationalShape(DomainError):
    code = "not_rational_shape"


class InfiniteSlope(DomainError):
    code = "infinite_slope"


class TrivialColoring(DomainError):
    code = "trivial_coloring"


class DegeneratePlane(DomainError):
    code = "degenerate_plane"


class InternalInconsistency(VerificationFailure):
    code = "internal_inconsistency"


class ConvergenceFailure(VerificationFailure):
    code = "convergence_failure"

    def __init__(self, message: str, iterations: int = 0, max_correction: float = float("nan")):
        self.iterations = iterations
        self.max_correction = max_correction
        super().__init__(f"{message} after {iterations} iterations (max correction {max_correction:.3e})")


class RouteMismatch(VerificationFailure):
    code = "route_mismatch"
