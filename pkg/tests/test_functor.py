import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spanalex.algebra import RAT_ONE, RAT_T, LaurentPoly, RatFunc
from spanalex.errors import InvalidInput
from spanalex.functor import (
    SWAP,
    alternating_power,
    at_generator,
    at_tangle,
    codirected_power,
    crossing_matrix,
    f_minus,
    f_plus,
)
from spanalex.linalg import Matrix, identity_span, span_from_map, spans_equivalent
from spanalex.tangle import Compose, Gen, Power, Rotate, X, inverse_tangle, parse_tangle, reverse_tangle

from test_tangle import braid_words

P = LaurentPoly.parse
T_INV = RAT_ONE / RAT_T
CROSSINGS = [Gen(s, k) for s in ("X+", "X-") for k in range(4)]


def rf(text):
    return RatFunc(P(text))


def basic(e, **kw):
    return at_tangle(e, **kw).basic_map()


# -- generator table ----------------------------------------------------------


def test_positive_crossing_matrix():
    assert crossing_matrix(Gen("X+", 0)) == Matrix([[1 - RAT_T, RAT_T], [1, 0]])
    assert at_generator(Gen("X+", 1)) == span_from_map(f_minus())


@pytest.mark.parametrize(
    "name, k, fn, inv",
    [
        ("X+", 0, f_plus, False),
        ("X+", 1, f_minus, False),
        ("X+", 2, f_plus, True),
        ("X+", 3, f_minus, True),
        ("X-", 0, f_minus, False),
        ("X-", 1, f_plus, True),
        ("X-", 2, f_minus, True),
        ("X-", 3, f_plus, False),
    ],
)
def test_rotation_classes(name, k, fn, inv):
    m = fn("at_t_inv" if inv else "at_t")
    assert crossing_matrix(Gen(name, k)) == m
    # each class is the quarter turn of the previous one
    assert spans_equivalent(at_tangle(Rotate(Gen(name, (k - 1) % 4))), span_from_map(m))


def test_cups_and_caps():
    cap = at_generator(Gen("capL"))
    assert (cap.src_dim, cap.apex_dim, cap.tgt_dim) == (2, 1, 0)
    assert cap.left == Matrix([[1], [1]])
    cup = at_generator(Gen("cupR"))
    assert (cup.src_dim, cup.tgt_dim) == (0, 2) and cup.right == Matrix([[1], [1]])


def test_klein_four_structure():
    for variant in ("at_t", "at_t_inv"):
        fp, fm = f_plus(variant), f_minus(variant)
        assert fp.inverse() == fm and fm.inverse() == fp
    # C sends f_+(t) to f_-(t^-1): the vertical arrows of the rotation square
    other = {"at_t": "at_t_inv", "at_t_inv": "at_t"}
    partner = {f_plus: f_minus, f_minus: f_plus}
    for fn in (f_plus, f_minus):
        for variant in other:
            m = fn(variant)
            conj = SWAP @ m @ SWAP
            assert conj == partner[fn](other[variant])
            assert SWAP @ conj @ SWAP == m
            assert SWAP @ m.inverse() @ SWAP == conj.inverse()


@pytest.mark.parametrize("g", CROSSINGS, ids=str)
@pytest.mark.parametrize("mode", ["fast", "generators"])
def test_half_turn_inverts_t(g, mode):
    assert spans_equivalent(at_tangle(Rotate(Rotate(g)), mode=mode), at_generator(g).subst_t_inverse())


@pytest.mark.parametrize("g", CROSSINGS, ids=str)
def test_quarter_turn_order_four(g):
    e = Rotate(Rotate(Rotate(Rotate(g))))
    assert spans_equivalent(at_tangle(e), at_generator(g))
    assert spans_equivalent(at_tangle(e, mode="generators"), at_generator(g))


# -- braiding closed forms ---------------------------------------------------------


def test_codirected_examples():
    assert codirected_power(1, "+") == f_plus()
    assert codirected_power(2, "+") == f_plus().scale(1 - RAT_T) + Matrix.identity(2).scale(RAT_T)
    m3 = codirected_power(3, "plus")
    assert m3[1, 0] == rf("t^2 - t + 1") and m3[1, 1] == rf("t - t^2")
    assert codirected_power(-1, "+") == f_minus()
    assert codirected_power(0, "-").is_identity()


@pytest.mark.parametrize("n", range(0, 13))
def test_cayley_hamilton(n):
    assert codirected_power(n + 1, "+") == f_plus() @ codirected_power(n, "+")
    # the quadratic relation f^2 = (1 - t) f + t
    f = codirected_power(n, "+")
    assert f_plus() @ f_plus() @ f == (f_plus() @ f).scale(1 - RAT_T) + f.scale(RAT_T)


@pytest.mark.parametrize("n", range(-12, 13))
@pytest.mark.parametrize("sign", ["+", "-"])
def test_codirected_power_is_matrix_power(n, sign):
    base = f_plus() if sign == "+" else f_minus()
    expected = Matrix.identity(2)
    step = base if n >= 0 else base.inverse()
    for _ in range(abs(n)):
        expected = step @ expected
    assert codirected_power(n, sign) == expected


def test_alternating_examples():
    assert alternating_power(0, "+").is_identity()
    # the third 4x4 block of the 6_2 layering, an alternating pair of negative crossings
    expected = Matrix([[2 - T_INV, -1 + T_INV], [1 - T_INV, T_INV]])
    assert alternating_power(2, "-") == expected
    assert alternating_power(2, "+") == expected.inverse()


@pytest.mark.parametrize("k", range(0, 7))
@pytest.mark.parametrize("variant", ["at_t", "at_t_inv"])
def test_alternating_inverse_pairs(k, variant):
    a = alternating_power(2 * k, "+", variant)
    b = alternating_power(2 * k, "-", variant)
    assert (a @ b).is_identity()


@pytest.mark.parametrize("n", range(0, 9))
def test_alternating_power_is_product(n):
    # tilde f_+^n alternates f_-(t) and f_-(t^-1), starting with f_-(t)
    expected = Matrix.identity(2)
    for i in range(n):
        expected = (f_minus("at_t") if i % 2 == 0 else f_minus("at_t_inv")) @ expected
    assert alternating_power(n, "+") == expected


# -- evaluation ------------------------------------------------------------------


def test_reidemeister_two():
    assert spans_equivalent(at_tangle(parse_tangle("compose(X+@0, X-@0)")), identity_span(2))


def braidings():
    for s, n in itertools.product("+-", range(-12, 13)):
        yield Power(X(s, 0), n)
        yield Power(X(s, 2), n)
        yield Power(Compose(X(s, 1), X(s, 3)), n)
        yield Power(Compose(X(s, 3), X(s, 1)), n)


@pytest.mark.parametrize("e", list(braidings()), ids=str)
def test_fast_matches_generators(e):
    assert spans_equivalent(at_tangle(e), at_tangle(e, mode="generators"))


@pytest.mark.parametrize("e", [Power(X("+", 0), 5), Power(Compose(X("-", 1), X("-", 3)), 4)], ids=str)
def test_braiding_then_inverse_is_identity(e):
    both = Compose(e, inverse_tangle(e))
    assert spans_equivalent(at_tangle(both), identity_span(2))


def test_six_two_layers():
    t1 = parse_tangle("tensor(id(down), id(down), pow(X+@0, 3))")
    m1 = Matrix.block_diag(Matrix.identity(2), Matrix([[rf("1 - t + t^2 - t^3"), rf("t - t^2 + t^3")], [rf("1 - t + t^2"), rf("t - t^2")]]))
    assert basic(t1) == m1
    t2 = parse_tangle("tensor(id(down), rot(X+@0), id(up))")
    m2 = Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, T_INV, 1 - T_INV, 0], [0, 0, 0, 1]])
    assert basic(t2) == m2
    t3 = parse_tangle("tensor(id(down), id(up), pow(compose(X-@1, X-@3), 1))")
    assert t3.source == t2.target
    m3 = Matrix.block_diag(Matrix.identity(2), Matrix([[2 - T_INV, -1 + T_INV], [1 - T_INV, T_INV]]))
    assert basic(t3) == m3
    g = Matrix(
        [
            [1, 0, 0, 0],
            [0, 0, rf("1 - t + t^2 - t^3"), rf("t - t^2 + t^3")],
            [0, rf("-t^-2 + 2*t^-1"), rf("t^-2 - 3*t^-1 + 4 - 4*t + 4*t^2 - 2*t^3"), rf("t^-1 - 3 + 4*t - 4*t^2 + 2*t^3")],
            [0, rf("-t^-2 + t^-1"), rf("t^-2 - 2*t^-1 + 3 - 3*t + 3*t^2 - t^3"), rf("t^-1 - 2 + 3*t - 3*t^2 + t^3")],
        ]
    )
    whole = Compose(Compose(t1, t2), t3)
    assert basic(whole) == g
    assert basic(whole, mode="generators") == g


@settings(max_examples=60)
@given(braid_words(max_len=6))
def test_reverse_inverts_t(e):
    assert spans_equivalent(at_tangle(reverse_tangle(e)), at_tangle(e).subst_t_inverse())


@settings(max_examples=40)
@given(braid_words(max_len=4))
def test_modes_agree_on_words(e):
    assert spans_equivalent(at_tangle(e), at_tangle(e, mode="generators"))


@given(braid_words(max_len=4), st.sampled_from([-1, 2, 3]))
def test_fibre_evaluation_commutes(e, c):
    assert spans_equivalent(at_tangle(e, t=c), at_tangle(e).evaluate(c))


def test_unknown_mode():
    with pytest.raises(InvalidInput):
        at_tangle(X("+", 0), mode="slow")
