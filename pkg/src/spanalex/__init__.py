"""Alexander polynomials of 2-bridge and pretzel knots from spans over Q(t).

Tangles are evaluated by a functor into spans of matrices over the field of
rational functions; closing them up yields the Alexander polynomial. At
``t = -1`` the same functor classifies rational tangles.
"""
from .algebra import LaurentPoly, RatFunc, normalize_alexander, qint
from .alexander import (
    AlexanderResult,
    alex_pretzel_closed,
    alex_pretzel_continuant,
    alex_pretzel_span,
    alex_rational_continuant,
    alex_rational_span,
    alexander_pretzel,
    alexander_rational,
    knot_determinant,
)
from .errors import DomainError, SpanAlexError, VerificationFailure
from .functor import at_tangle
from .linalg import Matrix, Span, span_canonicalize, span_compose, span_tensor
from .minus1 import Slope, classify_rational, coloring_propagate, plucker_point
from .roots import check_halfplane, check_unit_circle, family_verify, find_roots
from .tangle import PretzelSpec, RationalSpec, parse_tangle, pretzel_expr, rational_2bridge_expr

__version__ = "0.1.0"

__all__ = [
    "AlexanderResult",
    "DomainError",
    "LaurentPoly",
    "Matrix",
    "PretzelSpec",
    "RatFunc",
    "RationalSpec",
    "Slope",
    "Span",
    "SpanAlexError",
    "VerificationFailure",
    "alex_pretzel_closed",
    "alex_pretzel_continuant",
    "alex_pretzel_span",
    "alex_rational_continuant",
    "alex_rational_span",
    "alexander_pretzel",
    "alexander_rational",
    "at_tangle",
    "check_halfplane",
    "check_unit_circle",
    "classify_rational",
    "coloring_propagate",
    "family_verify",
    "find_roots",
    "knot_determinant",
    "normalize_alexander",
    "parse_tangle",
    "plucker_point",
    "pretzel_expr",
    "qint",
    "rational_2bridge_expr",
    "span_canonicalize",
    "span_compose",
    "span_tensor",
]
