import cmath
import io
import math
import random

import mpmath
import pytest
import sympy

from spanalex.algebra import ONE, ZERO, LaurentPoly
from spanalex.alexander import alex_pretzel_closed
from spanalex.errors import ConvergenceFailure, InvalidInput, ZeroPolynomial
from spanalex.roots import (
    CSV_HEADER,
    check_halfplane,
    check_unit_circle,
    family_verify,
    find_roots,
    integer_coefficients,
    polish,
    squarefree_factors,
    write_csv,
)
from spanalex.tangle import PretzelSpec

P = LaurentPoly.parse
TREFOIL = P("t^2 - t + 1")
FIGURE_EIGHT = P("t^2 - 3*t + 1")
NINE_ELEVEN = P("t^6 - 5*t^5 + 7*t^4 - 7*t^3 + 7*t^2 - 5*t + 1")


def oracle_roots(p: LaurentPoly):
    """High-precision roots: sympy squarefree split, then mpmath on each factor."""
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(integer_coefficients(p))), t)
    out = []
    for factor, mult in poly.sqf_list()[1]:
        with mpmath.workdps(60):
            rs = mpmath.polyroots([int(c) for c in factor.all_coeffs()], maxsteps=400, extraprec=400)
        out.extend([complex(z) for z in rs] * mult)
    return out


def matched_distance(a, b) -> float:
    """Largest distance in a greedy nearest matching of two root multisets."""
    rest = list(b)
    worst = 0.0
    for z in a:
        j = min(range(len(rest)), key=lambda i: abs(rest[i] - z))
        worst = max(worst, abs(rest.pop(j) - z))
    return worst


def test_trefoil_roots():
    r = find_roots(TREFOIL)
    expected = [cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3)]
    assert matched_distance(r.values, expected) < 1e-14
    assert all(abs(z.real - 0.5) < 1e-14 for z in r.values)
    assert check_unit_circle(r) and check_halfplane(r)


def test_figure_eight_roots():
    r = find_roots(FIGURE_EIGHT)
    s5 = math.sqrt(5)
    assert matched_distance(r.values, [(3 + s5) / 2, (3 - s5) / 2]) < 1e-14
    assert abs(r.values[0] * r.values[1] - 1) < 1e-14
    assert not check_unit_circle(r)


def test_nine_eleven_real_root():
    r = find_roots(NINE_ELEVEN)
    assert any(abs(z.imag) < 1e-12 and 3 < z.real < 4 for z in r.values)
    assert check_halfplane(r)
    assert not check_unit_circle(r)


def test_root_on_the_line():
    res = check_halfplane(find_roots(P("t + 1")))
    assert not res and res.detail["delta_at_minus_one_nonzero"] is False


def test_odd_pretzel_on_circle():
    r = find_roots(alex_pretzel_closed(PretzelSpec((3, 5, 7))).delta)
    assert check_unit_circle(r)
    assert matched_distance(r.values, oracle_roots(r.polynomial)) < 1e-12


def test_repeated_roots():
    r = find_roots(TREFOIL * TREFOIL * FIGURE_EIGHT)
    assert r.degree == 6 and len(r.roots) == 6
    assert sorted(z.multiplicity for z in r.roots) == [1, 1, 2, 2, 2, 2]
    assert squarefree_factors(integer_coefficients(TREFOIL**3)) == [([1, -1, 1], 3)]


def test_unit_polynomial_has_no_roots():
    r = find_roots(ONE)
    assert r.roots == () and check_unit_circle(r)


def test_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        find_roots(ZERO)


def test_iteration_budget_exhausted():
    p = alex_pretzel_closed(PretzelSpec((13, 15, 11, 9, 7))).delta
    with pytest.raises(ConvergenceFailure) as info:
        find_roots(p, maxiter=2)
    assert info.value.iterations == 2


def test_polish_improves_a_perturbed_root():
    c = integer_coefficients(TREFOIL)
    z = polish(c, cmath.exp(1j * math.pi / 3) + 1e-6)
    assert abs(z - cmath.exp(1j * math.pi / 3)) < 1e-15


def random_pretzel(rng):
    while True:
        n = rng.randint(2, 7)
        spec = PretzelSpec(tuple(rng.choice([x for x in range(-9, 10) if x]) for _ in range(n)))
        if spec.is_knot:
            return spec


def test_roots_match_high_precision_oracle():
    rng = random.Random(2)
    for _ in range(25):
        d = alex_pretzel_closed(random_pretzel(rng)).delta
        r = find_roots(d)
        scale = max([1.0] + [abs(z) for z in r.values])
        assert matched_distance(r.values, oracle_roots(r.polynomial)) < 1e-8 * scale


def test_root_count_product_and_pairing():
    rng = random.Random(6)
    for _ in range(25):
        d = alex_pretzel_closed(random_pretzel(rng)).delta
        r = find_roots(d)
        assert len(r.roots) == r.degree
        c = integer_coefficients(r.polynomial)
        prod = 1
        for z in r.values:
            prod *= z
        expected = (-1) ** r.degree * c[0] / c[-1]
        assert abs(prod - expected) <= 1e-9 * abs(expected)
        # Alexander symmetry: the roots are closed under t -> 1/t
        inv = [1 / z for z in r.values]
        assert matched_distance(r.values, inv) < 1e-7


def test_reports_are_deterministic():
    d = alex_pretzel_closed(PretzelSpec((2, 1, 3, 5, 7, 9))).delta
    assert find_roots(d) == find_roots(d)


def test_backends_agree():
    from spanalex import kernels

    d = alex_pretzel_closed(PretzelSpec((4, 3, 5, 7, 9, 11))).delta
    c = [float(x) for x in integer_coefficients(d)]
    found = []
    for mod in kernels.backends().values():
        z0 = mod.initial_guesses(c)
        roots, _, ok, _ = mod.aberth(c, z0, 1e-12, 200)
        assert ok
        found.append(roots)
    for other in found[1:]:
        assert matched_distance(found[0], other) < 1e-9


# -- family runs -----------------------------------------------------------------


@pytest.mark.parametrize("family", ["odd_pretzel", "even-pretzel-2p", "even_pretzel_2p1", "rational"])
def test_family_verify_small(family):
    rep = family_verify(family, samples=12, seed=1)
    assert rep.passed == 12 and rep.failures == ()
    assert rep.summary.startswith("12/12")
    assert rep.worst_margin > 0


def test_family_verify_parallel_matches_serial():
    a = family_verify("odd_pretzel", samples=8, seed=3)
    b = family_verify("odd_pretzel", samples=8, seed=3, jobs=2)
    assert a == b


def test_family_verify_reports_failures_as_data():
    rep = family_verify("odd_pretzel", samples=5, seed=3, eps=0.0)
    assert rep.passed < 5 and rep.failures


@pytest.mark.parametrize("kw", [{"family": "torus"}, {"family": "rational", "bound": 2}, {"family": "rational", "samples": -1}])
def test_family_verify_rejects(kw):
    args = {"family": "rational", "samples": 1, "seed": 0, **kw}
    with pytest.raises(InvalidInput):
        family_verify(**args)


def test_csv_rows():
    buf = io.StringIO()
    write_csv([find_roots(TREFOIL, knot="3_1"), find_roots(FIGURE_EIGHT, knot="4_1")], buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 5
    knot, re_, im_, ab, res = lines[1].split(",")
    assert knot == "3_1" and abs(float(ab) - 1) < 1e-15 and float(res) < 1e-15
    again = io.StringIO()
    write_csv([find_roots(TREFOIL, knot="3_1"), find_roots(FIGURE_EIGHT, knot="4_1")], again)
    assert again.getvalue() == buf.getvalue()
