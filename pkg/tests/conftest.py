import os
from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spanalex.algebra import LaurentPoly, RatFunc
from spanalex.linalg import Matrix, Span

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", parent=settings.get_profile("default"), derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

t = sympy.Symbol("t")


def to_sympy(x):
    """Independent sympy image of a LaurentPoly or RatFunc."""
    if isinstance(x, RatFunc):
        return to_sympy(x.num) / to_sympy(x.den)
    return sum((sympy.Rational(c.numerator, c.denominator) * t**k for k, c in x.terms().items()), sympy.Integer(0))


def sympy_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


small_fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 3)
)

laurents = st.builds(
    lambda lo, cs: LaurentPoly(lo, cs),
    st.integers(-3, 3),
    st.lists(st.integers(-5, 5), max_size=5),
)

rational_laurents = st.builds(
    lambda lo, cs: LaurentPoly(lo, cs),
    st.integers(-3, 3),
    st.lists(small_fractions, max_size=4),
)

nonzero_laurents = st.builds(
    lambda lo, cs, lead: LaurentPoly(lo, cs + [lead]),
    st.integers(-3, 3),
    st.lists(st.integers(-5, 5), max_size=4),
    st.integers(1, 5) | st.integers(-5, -1),
)

ratfuncs = st.builds(RatFunc, laurents, nonzero_laurents)

# entries for random spans: keep them small so fibre products stay cheap
entries = st.one_of(
    st.integers(-2, 2).map(RatFunc),
    st.sampled_from([RatFunc(LaurentPoly(1, [1])), RatFunc(LaurentPoly(0, [1, -1])), RatFunc(LaurentPoly(-1, [1]))]),
)


@st.composite
def matrices(draw, rows, cols):
    return Matrix([[draw(entries) for _ in range(cols)] for _ in range(rows)], cols)


@st.composite
def spans(draw, src=None, tgt=None, max_dim=3):
    src = draw(st.integers(0, max_dim)) if src is None else src
    tgt = draw(st.integers(0, max_dim)) if tgt is None else tgt
    apex = draw(st.integers(0, max_dim))
    return Span(draw(matrices(src, apex)), draw(matrices(tgt, apex)))
