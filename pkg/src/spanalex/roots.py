"""Numerical roots of Alexander polynomials and root-location checks.

Roots come from Aberth-Ehrlich iteration (see :mod:`spanalex.kernels`) run on
each squarefree factor of the integer polynomial, so repeated roots do not
slow convergence. Everything is deterministic: fixed starting points, fixed
update order, seeded sampling.
"""
from __future__ import annotations

import csv
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .algebra import LaurentPoly, _exact_div, _poly_gcd, _primitive, normalize_alexander
from .errors import ConvergenceFailure, InvalidInput, ZeroPolynomial

DEFAULT_TOL = 1e-12
DEFAULT_MAXITER = 200
CIRCLE_EPS = 1e-8
HALFPLANE_GUARD = 1e-9
RESIDUAL_BOUND = 1e-9

FAMILIES = ("odd_pretzel", "even_pretzel_2p", "even_pretzel_2p1", "rational")


@dataclass(frozen=True)
class Root:
    value: complex
    residual: float  # |p(z)| / sum |a_i| |z|^i on the full polynomial
    multiplicity: int = 1


@dataclass(frozen=True)
class RootReport:
    polynomial: LaurentPoly  # normalized
    roots: tuple  # of Root, repeated by multiplicity
    tolerance: float
    iterations: int
    backend: str
    knot: str = ""

    @property
    def degree(self) -> int:
        return self.polynomial.max_degree

    @property
    def values(self) -> list:
        return [r.value for r in self.roots]

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.roots), default=0.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float  # positive iff passed
    worst: complex | None
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def integer_coefficients(p: LaurentPoly) -> list:
    """Primitive integer coefficient list (lowest degree first) of ``normalize(p)``."""
    coeffs = normalize_alexander(p).coefficients
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return _primitive([int(c * lcm) for c in coeffs])


def _derivative(c: list) -> list:
    return [i * x for i, x in enumerate(c)][1:]


def _sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def squarefree_factors(c: list) -> list:
    """Yun's decomposition: ``[(factor, multiplicity), ...]`` with nonconstant factors."""
    if len(c) <= 1:
        return []
    dc = _derivative(c)
    b = _poly_gcd(c, dc)
    a = _exact_div(c, b)
    e = _sub(_exact_div(dc, b), _derivative(a))
    out = []
    i = 1
    while len(a) > 1:
        g = _poly_gcd(a, e) if e else _primitive(list(a))
        if len(g) > 1:
            out.append((g, i))
        a = _exact_div(a, g)
        e = _sub(_exact_div(e, g) if e else [], _derivative(a))
        i += 1
    return out


def relative_residual(coeffs: list, z: complex) -> float:
    az = abs(z)
    scale = sum(abs(c) * az**i for i, c in enumerate(coeffs))
    return abs(kernels.horner(coeffs, z)) / scale if scale else 0.0


def _exact_eval(c: list, z: complex) -> tuple:
    """Exact ``p(z) * den^n`` and ``p'(z) * den^(n-1)`` as Gaussian integers, plus ``den``."""
    re_, im_ = Fraction(z.real), Fraction(z.imag)
    den = max(re_.denominator, im_.denominator)
    a, b = int(re_ * den), int(im_ * den)
    # homogenized Horner in Gaussian integers: value * den^n
    n = len(c) - 1
    pr = pi = dr = di = 0
    for k in range(n, -1, -1):
        if k < n:
            dr, di = dr * a - di * b + pr, dr * b + di * a + pi
        pr, pi = pr * a - pi * b + c[k] * den ** (n - k), pr * b + pi * a
    # p = (pr + i pi) / den^n, p' = (dr + i di) / den^(n-1)
    return pr, pi, dr, di, den


def polish(c: list, z: complex, steps: int = 6) -> complex:
    """Newton steps on a simple root with exact evaluation of ``p`` and ``p'``.

    Double-precision evaluation loses accuracy on clustered roots; evaluating
    exactly at the float nearest the root restores full precision.
    """
    for _ in range(steps):
        pr, pi, dr, di, den = _exact_eval(c, z)
        if pr == 0 and pi == 0:
            return z
        if dr == 0 and di == 0:
            return z
        # w = p / p' = (pr + i pi) / ((dr + i di) * den)
        norm = (dr * dr + di * di) * den
        wr = Fraction(pr * dr + pi * di, norm)
        wi = Fraction(pi * dr - pr * di, norm)
        w = complex(float(wr), float(wi))
        z = z - w
        if abs(w) <= 1e-15 * max(1.0, abs(z)):
            break
    return z


def _solve_factor(c: list, tol: float, maxiter: int):
    if len(c) == 2:
        return [complex(-c[0] / c[1])], 0
    roots, it, ok, corr = kernels.aberth(
        [float(x) for x in c], kernels.initial_guesses([float(x) for x in c]), tol, maxiter
    )
    if not all(math.isfinite(z.real) and math.isfinite(z.imag) for z in roots):
        raise ConvergenceFailure(
            f"non-finite iterate on a degree {len(c) - 1} factor (coefficients exceed double range?)",
            iterations=it,
            max_correction=math.nan,
        )
    if not ok:
        raise ConvergenceFailure(
            f"Aberth iteration did not converge on a degree {len(c) - 1} factor",
            iterations=it,
            max_correction=corr,
        )
    return [polish(c, z) for z in roots], it


def find_roots(delta: LaurentPoly, tol: float = DEFAULT_TOL, maxiter: int = DEFAULT_MAXITER, knot: str = "") -> RootReport:
    """All complex roots of the normalized polynomial, with residuals."""
    if delta.is_zero():
        raise ZeroPolynomial("cannot find roots of the zero polynomial")
    norm = normalize_alexander(delta)
    coeffs = integer_coefficients(norm)
    found = []
    iterations = 0
    for factor, mult in squarefree_factors(coeffs):
        vals, it = _solve_factor(factor, tol, maxiter)
        iterations = max(iterations, it)
        for z in vals:
            found.append((z, mult))
    found.sort(key=lambda zm: (round(zm[0].real, 12), round(zm[0].imag, 12)))
    roots = []
    for z, mult in found:
        res = relative_residual(coeffs, z)
        if res > RESIDUAL_BOUND:
            raise ConvergenceFailure(
                f"root {z} has relative residual {res:.3e}", iterations=iterations, max_correction=res
            )
        roots.extend([Root(z, res, mult)] * mult)
    if len(roots) != norm.max_degree:
        raise ConvergenceFailure(
            f"found {len(roots)} roots for degree {norm.max_degree}", iterations=iterations, max_correction=math.nan
        )
    return RootReport(norm, tuple(roots), tol, iterations, kernels.BACKEND, knot)


def check_unit_circle(r: RootReport, eps: float = CIRCLE_EPS) -> CheckResult:
    """Every root satisfies ``| |t| - 1 | < eps``."""
    worst, dev = None, 0.0
    for root in r.roots:
        d = abs(abs(root.value) - 1.0)
        if worst is None or d > dev:
            worst, dev = root.value, d
    return CheckResult("unit-circle", dev < eps, eps - dev, worst, {"eps": eps, "max_deviation": dev})


def check_halfplane(r: RootReport, guard: float = HALFPLANE_GUARD) -> CheckResult:
    """Every root has ``Re(t) > -1`` with a guard band.

    ``Delta(-1) != 0`` is certified exactly alongside, since the numerical
    test alone cannot exclude a root sitting on the line.
    """
    worst = min((root.value for root in r.roots), key=lambda z: z.real, default=None)
    min_re = worst.real if worst is not None else math.inf
    exact_nonzero = r.polynomial(-1) != 0
    passed = min_re > -1.0 + guard and exact_nonzero
    return CheckResult(
        "half-plane",
        passed,
        min_re - (-1.0 + guard),
        worst,
        {"guard": guard, "min_re": min_re, "delta_at_minus_one_nonzero": exact_nonzero},
    )


CHECKS = {"circle": check_unit_circle, "hoste": check_halfplane}


# ---------------------------------------------------------------------------
# family sampling


def _odd_between(rng: random.Random, lo: int, hi: int) -> int:
    return rng.randrange(lo | 1, hi + 1, 2)


def sample_spec(family: str, rng: random.Random, bound: int):
    """One random knot satisfying the hypotheses of the family's theorem."""
    from .tangle import PretzelSpec

    if family == "odd_pretzel":
        n = rng.choice((3, 5, 7))
        return PretzelSpec(tuple(_odd_between(rng, 1, bound) for _ in range(n)))
    if family in ("even_pretzel_2p", "even_pretzel_2p1"):
        n = rng.choice((2, 4, 6) if family == "even_pretzel_2p" else (3, 5, 7))
        first = rng.randrange(2, max(bound, 2) + 1, 2)
        return PretzelSpec((first,) + tuple(_odd_between(rng, 1, bound) for _ in range(n - 1)))
    if family == "rational":
        while True:
            p = _odd_between(rng, 3, bound)
            q = rng.randrange(1, p)
            if math.gcd(p, q) == 1:
                return (p, q)
    raise InvalidInput(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


FAMILY_CHECK = {
    "odd_pretzel": "circle",
    "even_pretzel_2p": "circle",
    "even_pretzel_2p1": "hoste",
    "rational": "hoste",
}
DEFAULT_BOUND = {"odd_pretzel": 15, "even_pretzel_2p": 15, "even_pretzel_2p1": 15, "rational": 99}


def knot_polynomial(spec, route: str | None = None) -> tuple[str, LaurentPoly]:
    from .alexander import alex_pretzel_closed, alex_pretzel_continuant, alex_rational_continuant, alex_rational_span
    from .tangle import PretzelSpec

    if isinstance(spec, PretzelSpec):
        fn = alex_pretzel_continuant if route == "continuant" else alex_pretzel_closed
        return str(spec), fn(spec).delta
    p, q = spec
    fn = alex_rational_span if route == "span" else alex_rational_continuant
    return f"b({p},{q})", fn(p, q).delta


def _verify_one(args) -> tuple:
    spec, check, tol, eps = args
    label, delta = knot_polynomial(spec)
    rep = find_roots(delta, tol=tol, knot=label)
    res = check_unit_circle(rep, eps) if check == "circle" else check_halfplane(rep)
    return label, res.passed, res.margin, rep.degree


@dataclass(frozen=True)
class FamilyReport:
    family: str
    check: str
    samples: int
    seed: int
    bound: int
    passed: int
    worst_margin: float
    failures: tuple  # of (knot, margin)
    rows: tuple  # of (knot, passed, margin, degree), in sample order

    @property
    def summary(self) -> str:
        name = "unit-circle" if self.check == "circle" else "half-plane"
        return f"{self.passed}/{self.samples} {name}"


def family_verify(
    family: str,
    samples: int,
    seed: int,
    bound: int | None = None,
    tol: float = DEFAULT_TOL,
    eps: float = CIRCLE_EPS,
    jobs: int = 1,
) -> FamilyReport:
    """Sample knots from ``family``, compute roots and run the matching check.

    Failures are returned as data. Output order follows sample order for any
    ``jobs``.
    """
    family = family.replace("-", "_")
    if family not in FAMILIES:
        raise InvalidInput(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if samples < 0:
        raise InvalidInput("samples must be nonnegative")
    bound = DEFAULT_BOUND[family] if bound is None else bound
    if bound < (3 if family == "rational" else 2):
        raise InvalidInput(f"bound {bound} is too small for {family}")
    rng = random.Random(seed)
    check = FAMILY_CHECK[family]
    tasks = [(sample_spec(family, rng, bound), check, tol, eps) for _ in range(samples)]
    if jobs > 1 and samples > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_verify_one, tasks, chunksize=max(1, samples // (4 * jobs))))
    else:
        rows = [_verify_one(t) for t in tasks]
    failures = tuple((label, margin) for label, ok, margin, _ in rows if not ok)
    worst = min((r[2] for r in rows), default=math.inf)
    return FamilyReport(family, check, samples, seed, bound, samples - len(failures), worst, failures, tuple(rows))


# ---------------------------------------------------------------------------


CSV_HEADER = ("knot", "re", "im", "abs", "residual")


def root_rows(reports: Iterable[RootReport]) -> list:
    return [
        (r.knot, repr(z.value.real), repr(z.value.imag), repr(abs(z.value)), repr(z.residual))
        for r in reports
        for z in r.roots
    ]


def write_csv(reports: Iterable[RootReport], fh) -> None:
    """One row per root; floats written with ``repr`` so output is byte-stable."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(root_rows(reports))
