import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from spanalex.errors import (
    DegeneratePlane,
    InfiniteSlope,
    InvalidInput,
    NotRationalShape,
    TrivialColoring,
)
from spanalex.linalg import Matrix, identity_span, span_compose, span_from_map, spans_equivalent
from spanalex.minus1 import (
    ColoringMatrix,
    PluckerPoint,
    Slope,
    basic_span,
    classification_record,
    classify_rational,
    coloring_propagate,
    fraction_from_coloring,
    fraction_from_plucker_order,
    phi,
    plucker_from_vectors,
    plucker_point,
    slope_compose,
    slope_of_span,
    slope_rotate,
    span_at_minus_one,
    span_plucker,
    tangle_span,
    verify_rational_curve,
)
from spanalex.tangle import X, RationalSpec, parse_tangle, rational_canonical_expr, rotate

H = Matrix([[1, -1], [1, -1]])
SEVEN_SIXTEENTHS = ColoringMatrix(Fraction(16), Fraction(23), Fraction(0), Fraction(7))


def canonical(p, q):
    return rational_canonical_expr(RationalSpec(p, q))


def hand_basic(x: Fraction):
    """The span of id + x h built directly, without the library's slope helpers."""
    return span_from_map(Matrix([[1 + x, -x], [x, 1 - x]]))


def random_fractions(n, bound=50, seed=0):
    rng = random.Random(seed)
    return [RationalSpec(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]


# -- slopes ---------------------------------------------------------------------


def test_slope_normalization():
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-3, 0) == Slope(1, 0)
    assert str(Slope(1, 0)) == "inf" and str(Slope(6, 4)) == "3/2"
    with pytest.raises(InvalidInput):
        Slope(0, 0)
    with pytest.raises(InfiniteSlope):
        Slope(1, 0).to_fraction()


def test_slope_compose_and_rotate():
    assert slope_compose(Slope.of(Fraction(1, 2)), Slope.of(Fraction(1, 3))) == Slope(5, 6)
    assert slope_compose(Slope(1, 1), Slope(-1, 1)) == Slope(0, 1)
    assert slope_rotate(Slope(0, 1)) == Slope(1, 0)
    assert slope_rotate(Slope(1, 0)) == Slope(0, 1)
    assert slope_rotate(Slope(3, 2)) == Slope(-2, 3)
    with pytest.raises(InfiniteSlope):
        slope_compose(Slope(1, 0), Slope(1, 1))


@given(st.fractions(max_denominator=30), st.fractions(max_denominator=30))
def test_slope_addition_matches_map_composition(a, b):
    s = span_from_map(Matrix.identity(2) + H.scale(a))
    u = span_from_map(Matrix.identity(2) + H.scale(b))
    assert spans_equivalent(span_compose(s, u), basic_span(slope_compose(Slope.of(a), Slope.of(b))))


@given(st.integers(-40, 40), st.integers(-40, 40).filter(bool))
def test_slope_rotate_is_an_involution(p, q):
    s = Slope(p, q)
    assert slope_rotate(slope_rotate(s)) == s
    assert slope_rotate(s) == Slope(-q, p)


def test_slope_fraction_conversion():
    s = Slope(-2, 3)
    assert s.tangle_fraction() == RationalSpec(3, 2)
    assert Slope.from_tangle_fraction(RationalSpec(3, 2)) == s
    assert Slope(0, 1).tangle_fraction() == RationalSpec(1, 0)


# -- classification ---------------------------------------------------------------


def test_classify_three_halves():
    c = classify_rational(canonical(3, 2))
    assert c.slope == Slope(-2, 3)
    assert c.fraction == RationalSpec(3, 2)


def test_classify_single_crossings():
    assert classify_rational(X("-", 0)).fraction == RationalSpec(1, 1)
    assert classify_rational(X("+", 0)).fraction == RationalSpec(-1, 1)


def test_classify_zero_tangle():
    # fraction 0 is slope infinity under fraction = -1/slope
    c = classify_rational(canonical(0, 1))
    assert c.fraction == RationalSpec(0, 1)
    assert c.slope.is_infinite
    assert classify_rational(canonical(1, 0)).slope == Slope(0, 1)


@pytest.mark.parametrize("r", random_fractions(200), ids=str)
def test_classify_random_fractions(r):
    e = rational_canonical_expr(r)
    c = classify_rational(e)
    assert c.fraction == r
    # oracle: the basic span of id - (q/p) h, written out by hand
    if r.p == 0:
        expected = basic_span(Slope(1, 0))
    else:
        expected = hand_basic(Fraction(-r.q, r.p))
    assert spans_equivalent(c.span, expected)
    assert spans_equivalent(tangle_span(r), expected)


@pytest.mark.parametrize("r", random_fractions(60, seed=1), ids=str)
def test_rotation_compatibility(r):
    e = rational_canonical_expr(r)
    assert classify_rational(rotate(e)).slope == slope_rotate(classify_rational(e).slope)


def test_routes_agree():
    e = canonical(11, 7)
    assert spans_equivalent(span_at_minus_one(e), span_at_minus_one(e, route="fibre"))
    with pytest.raises(InvalidInput):
        span_at_minus_one(e, route="numeric")


def test_classify_rejects_wrong_shapes():
    with pytest.raises(NotRationalShape):
        classify_rational(parse_tangle("tensor(X+@0, id(up))"))
    with pytest.raises(NotRationalShape):
        slope_of_span(span_from_map(Matrix([[2, 0], [0, 1]])))
    with pytest.raises(NotRationalShape):
        slope_of_span(identity_span(3))


# -- colorings ------------------------------------------------------------------


def test_seven_sixteenths_coloring():
    col = coloring_propagate(canonical(7, 16), (0, 7))
    assert col.matrix == SEVEN_SIXTEENTHS
    assert col.is_integral
    assert all(c.fox_ok for c in col.crossings)
    assert len(col.crossings) == 7  # 2 + 3 + 2 twists
    assert fraction_from_coloring(col.matrix) == RationalSpec(7, 16)
    assert fraction_from_plucker_order(col.matrix) == RationalSpec(-7, 16)


def test_seed_on_other_points():
    col = coloring_propagate(canonical(7, 16), (16, 23), points=("NW", "NE"))
    assert col.matrix == SEVEN_SIXTEENTHS
    with pytest.raises(InvalidInput):
        coloring_propagate(canonical(7, 16), (0, 1), points=("SW", "SW"))
    with pytest.raises(InvalidInput):
        coloring_propagate(canonical(7, 16), (0, 1), points=("SW", "N"))
    with pytest.raises(InvalidInput):
        coloring_propagate(canonical(0, 1), (0, 1))


@pytest.mark.parametrize("k, l", [(1, 0), (2, 5), (-3, 1), (Fraction(1, 7), 0)])
def test_affine_rescale_is_a_coloring(k, l):
    e = canonical(7, 16)
    col = coloring_propagate(e, (k * 0 + l, k * 7 + l))
    assert col.matrix == SEVEN_SIXTEENTHS.affine(k, l)
    assert fraction_from_coloring(col.matrix) == RationalSpec(7, 16)


@pytest.mark.parametrize("r", random_fractions(40, bound=30, seed=2), ids=str)
def test_diagonal_sum_rule(r):
    e = rational_canonical_expr(r)
    try:
        col = coloring_propagate(e, (0, 1))
    except InvalidInput:
        col = coloring_propagate(e, (0, 1), points=("NW", "NE"))
    assert col.matrix.diagonal_sum_rule()
    assert all(c.fox_ok for c in col.crossings)
    assert fraction_from_coloring(col.matrix) == r


def test_trivial_coloring():
    m = ColoringMatrix(*(Fraction(3),) * 4)
    with pytest.raises(TrivialColoring):
        fraction_from_coloring(m)
    with pytest.raises(TrivialColoring):
        fraction_from_plucker_order(m)


def test_fraction_formulas_on_infinity():
    m = ColoringMatrix(Fraction(0), Fraction(1), Fraction(0), Fraction(1))
    assert fraction_from_coloring(m).is_infinite


# -- Plücker geometry -------------------------------------------------------------


def sympy_minors(u, w):
    m = sympy.Matrix([list(u), list(w)])
    return [m.extract([0, 1], [i, j]).det() for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]


def test_seven_sixteenths_plucker_point():
    pt = plucker_point(SEVEN_SIXTEENTHS.vector)
    assert pt == PluckerPoint(7, -16, -9, -23, -16, 7)
    assert pt.quadric() == 0
    assert pt.line_equations() == (0, 0, 0, 0)
    chk = verify_rational_curve(pt)
    assert chk.on_curve and chk.parameter == (7, -16)
    assert chk.fraction == RationalSpec(-7, 16)


@given(st.lists(st.integers(-20, 20), min_size=4, max_size=4), st.lists(st.integers(-20, 20), min_size=4, max_size=4))
def test_plucker_matches_minors(u, w):
    minors = sympy_minors(u, w)
    if not any(minors):
        with pytest.raises(DegeneratePlane):
            plucker_from_vectors(u, w)
        return
    pt = plucker_from_vectors(u, w)
    assert pt.projectively_equal(PluckerPoint(*(int(x) for x in minors)))
    assert pt.quadric() == 0  # every plane lies on the Klein quadric


def test_plucker_errors():
    with pytest.raises(InvalidInput):
        plucker_point((1, 2, 3))
    with pytest.raises(DegeneratePlane):
        plucker_point((5, 5, 5, 5))


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_phi_lies_on_the_curve(a, b):
    if a == b == 0:
        with pytest.raises(DegeneratePlane):
            phi(a, b)
        return
    chk = verify_rational_curve(phi(a, b))
    assert chk.on_curve and chk.quadric == 0


def test_phi_example():
    assert phi(1, 2).coords == (1, 2, 3, 1, 2, 1)


def test_off_curve_point():
    # a plane through v0 whose coloring breaks the diagonal sum rule
    chk = verify_rational_curve(plucker_point((0, 1, 3, 2)))
    assert not chk.on_curve


@pytest.mark.parametrize("r", random_fractions(40, bound=30, seed=3), ids=str)
def test_coloring_plane_is_span_plane(r):
    e = rational_canonical_expr(r)
    c = classify_rational(e)
    rec = classification_record(e)
    pt = PluckerPoint(*rec["plucker"])
    assert pt.projectively_equal(span_plucker(c.span))
    assert rec["on_curve"] and pt.quadric() == 0 and not any(pt.line_equations())
    assert rec["fraction"] == rec["coloring_fraction"] == str(r)


def test_classification_record():
    rec = classification_record(canonical(7, 16))
    assert rec == {
        "fraction": "7/16",
        "slope": "-16/7",
        "coloring_matrix": [[16, 23], [0, 7]],
        "coloring_fraction": "7/16",
        "plucker_fraction": "-7/16",
        "plucker": [7, -16, -9, -23, -16, 7],
        "on_curve": True,
    }
