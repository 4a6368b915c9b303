from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spanalex.algebra import (
    ONE,
    RAT_ONE,
    T,
    T_INV,
    ZERO,
    LaurentPoly,
    RatFunc,
    eval_complex,
    laurent_arith,
    normalize_alexander,
    qint,
    ratfunc_arith,
    subst_t_inverse,
    symmetric_alexander,
)
from spanalex.errors import DivisionByZero, InvalidInput, ZeroEvaluationPoint, ZeroPolynomial

from conftest import laurents, nonzero_laurents, rational_laurents, ratfuncs, sympy_equal, t, to_sympy

P = LaurentPoly.parse


# -- LaurentPoly ------------------------------------------------------------


def test_difference_of_squares():
    assert laurent_arith(T + 1, T - 1, "mul") == P("t^2 - 1")


def test_zero_is_additive_identity():
    p = P("3*t^2 - t^-1")
    assert laurent_arith(ZERO, p, "add") == p


def test_product_with_inverse_variable():
    prod = (1 - T) * (1 - T_INV)
    assert prod == P("-t + 2 - t^-1")
    assert prod(2) == Fraction(-1, 2)


def test_canonical_trimmed_form():
    p = LaurentPoly(-2, [0, 0, 1, 2, 0])
    assert p.min_degree == 0
    assert p.coefficients == (1, 2)
    assert ZERO.coefficients == () and ZERO.min_degree == 0


@pytest.mark.parametrize(
    "text",
    ["t^4 - 3*t^3 + 3*t^2 - 3*t + 1", "-t^2 + 3*t - 3 + 3*t^-1 - t^-2", "1/2*t - 7/3", "0", "-t^-5"],
)
def test_text_round_trip(text):
    assert str(P(text)) == text


@pytest.mark.parametrize("bad", ["", "t^", "3t", "2**t", "t t"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(InvalidInput):
        P(bad)


def test_unknown_operator():
    with pytest.raises(InvalidInput):
        laurent_arith(ONE, ONE, "pow")


@settings(max_examples=1000)
@given(rational_laurents, rational_laurents, rational_laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a * ONE == a


@given(laurents, laurents)
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


# -- quantum integers ---------------------------------------------------------


def test_qint_examples():
    assert qint(3) == P("t^2 + t + 1")
    assert qint(0) == ZERO
    assert qint(-2) == P("-t^-1 - t^-2")


@pytest.mark.parametrize("n", range(-50, 51))
def test_qint_identities(n):
    # t[n] + 1 = [n+1]
    assert T * qint(n) + 1 == qint(n + 1)
    # [-n] = -t^-n [n]
    assert qint(-n) == -(qint(n).shift(-n))
    # [n] at 1/t equals t^(1-n) [n]
    assert qint(n, "at_t_inv") == qint(n).shift(1 - n)


@pytest.mark.parametrize("n", [-7, -1, 1, 4, 9])
def test_qint_variants_against_sympy(n):
    for sign, x in [("at_t", t), ("at_neg_t", -t), ("at_t_inv", 1 / t), ("at_neg_t_inv", -1 / t)]:
        closed = (1 - x**n) / (1 - x)
        assert sympy_equal(to_sympy(qint(n, sign)), closed)


def test_qint_rejects_unknown_argument():
    with pytest.raises(InvalidInput):
        qint(2, "at_2t")


# -- substitution and evaluation ------------------------------------------------


def test_subst_examples():
    assert subst_t_inverse(P("t^2 + 1")) == P("t^-2 + 1")
    assert subst_t_inverse(ZERO) == ZERO


@given(rational_laurents)
def test_subst_is_involution(p):
    assert p.subst_t_inverse().subst_t_inverse() == p


@given(laurents)
def test_subst_matches_sympy(p):
    assert sympy.expand(to_sympy(p.subst_t_inverse()) - to_sympy(p).subs(t, 1 / t)) == 0


def test_eval_complex_examples():
    assert eval_complex(P("t - 1 + t^-1"), 1) == 1
    assert eval_complex(P("t^2 - t + 1"), -1) == 3
    assert eval_complex(P("t - 3 + t^-1"), -1) == -5


def test_eval_complex_zero_point():
    assert eval_complex(P("t^2 + 4"), 0) == 4
    with pytest.raises(ZeroEvaluationPoint):
        eval_complex(P("t^-1 + 1"), 0)


@given(laurents, st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0))
def test_eval_complex_matches_sympy(p, z):
    expected = complex(to_sympy(p).subs(t, sympy.nsimplify(z.real) + sympy.I * sympy.nsimplify(z.imag)).evalf())
    assert abs(p.eval_complex(z) - expected) <= 1e-9 * (1 + abs(expected))


# -- normalization ------------------------------------------------------------


def test_normalize_examples():
    target = P("t^4 - 3*t^3 + 3*t^2 - 3*t + 1")
    assert normalize_alexander(P("t^3 - 3*t^2 + 3*t - 3 + t^-1")) == target
    assert normalize_alexander(P("-t^2 + 3*t - 3 + 3*t^-1 - t^-2")) == target
    assert normalize_alexander(ONE) == ONE


def test_normalize_zero():
    with pytest.raises(ZeroPolynomial):
        normalize_alexander(ZERO)


@given(nonzero_laurents, st.integers(-5, 5), st.sampled_from([1, -1]))
def test_normalize_unit_invariant(p, k, sign):
    n = normalize_alexander(p)
    assert normalize_alexander(n) == n
    assert normalize_alexander(p.shift(k).scale(sign)) == n
    assert n.min_degree == 0 and n.coefficient(n.max_degree) > 0


def test_symmetric_form():
    s = symmetric_alexander(P("t^4 - 3*t^3 + 3*t^2 - 3*t + 1"))
    assert s == P("t^2 - 3*t + 3 - 3*t^-1 + t^-2")
    assert s == s.subst_t_inverse()


# -- RatFunc ------------------------------------------------------------------


def test_ratfunc_examples():
    assert RatFunc(1, 1 - T) * (1 - T) == RAT_ONE
    for n in (-4, 1, 7):
        assert RatFunc(qint(n), qint(n)) == RAT_ONE


def test_quantum_reciprocal_difference():
    # 1/[2]_{-t} - 1/[3]_{-t} = t^2 / ((1 - t)(1 - t + t^2)) after reduction
    got = ratfunc_arith(RatFunc(1, qint(2, "at_neg_t")), RatFunc(1, qint(3, "at_neg_t")), "sub")
    assert got == RatFunc(T * T, (1 - T) * P("t^2 - t + 1"))
    assert sympy_equal(to_sympy(got), t**2 / ((1 - t) * (1 - t + t**2)))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        RatFunc(1, 0)
    with pytest.raises(DivisionByZero):
        RAT_ONE / RatFunc(0)


@given(ratfuncs)
def test_ratfunc_canonical_representation(r):
    assert r.den.min_degree == 0
    assert r.den.coefficient(r.den.max_degree) == 1
    if not r.den.is_constant():
        g = sympy.gcd(sympy.Poly(to_sympy(r.num) * t**max(0, -r.num.min_degree), t), sympy.Poly(to_sympy(r.den), t))
        assert g.degree() == 0


@given(ratfuncs, ratfuncs, ratfuncs)
def test_ratfunc_field_ops_match_sympy(a, b, c):
    assert sympy_equal(to_sympy(a * b + c), to_sympy(a) * to_sympy(b) + to_sympy(c))
    assert sympy_equal(to_sympy(a - c), to_sympy(a) - to_sympy(c))
    if not b.is_zero():
        assert sympy_equal(to_sympy(a / b), to_sympy(a) / to_sympy(b))
        assert (a / b) * b == a


@given(ratfuncs, ratfuncs)
def test_equal_functions_have_equal_representations(a, b):
    assert (a + b) - b == a
    assert hash((a + b) - b) == hash(a)


@given(ratfuncs)
def test_ratfunc_subst_involution(r):
    assert r.subst_t_inverse().subst_t_inverse() == r
