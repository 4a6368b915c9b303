"""Alexander polynomials of 2-bridge and pretzel knots.

Three independent routes:

* ``span``: evaluate the tangle decomposition with the functor and read the
  polynomial off the closure matrix (2-bridge) or off a minor of the cyclic
  tridiagonal matrix (pretzel);
* ``continuant``: a three-term recurrence on the same data;
* ``closed``: explicit formulas in quantum integers (pretzel only).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import ONE, RAT_ONE, RAT_T, LaurentPoly, RatFunc, T, T_INV, normalize_alexander, qint
from .errors import InternalInconsistency, InvalidInput, RouteMismatch
from .functor import at_tangle
from .linalg import Matrix
from .tangle import PretzelSpec, pretzel_expr, rational_2bridge_expr, to_text

RATIONAL_ROUTES = ("span", "continuant")
PRETZEL_ROUTES = ("span", "continuant", "closed")

P_ODD = Matrix([[1, 0, 0, -1], [0, 1, -1, 0]])
P_EVEN = Matrix([[1, -1, 0, 0], [0, 0, 1, -1]])
Q_CLOSE = Matrix([[1, 0], [0, 1], [0, 1], [1, 0]])


@dataclass(frozen=True)
class CyclicTridiagonal:
    """Tridiagonal matrix with corner entries.

    Row ``k`` has ``l[k]`` left of the diagonal entry ``a[k]`` and ``u[k]``
    right of it, indices taken cyclically, so ``l[0]`` sits in the last
    column and ``u[n-1]`` in the first. Entries landing on the same position
    (``n <= 2``) add up.
    """

    n: int
    a: tuple
    u: tuple
    l: tuple

    def matrix(self) -> Matrix:
        n = self.n
        rows = [[RatFunc() for _ in range(n)] for _ in range(n)]
        for k in range(n):
            rows[k][k] = rows[k][k] + self.a[k]
            rows[k][(k + 1) % n] = rows[k][(k + 1) % n] + self.u[k]
            rows[k][(k - 1) % n] = rows[k][(k - 1) % n] + self.l[k]
        return Matrix(rows, n)


@dataclass(frozen=True)
class AlexanderResult:
    knot: str
    delta: LaurentPoly
    route: str
    presentation: object
    mirror_applied: bool = False
    kernel_dim: int | None = None

    @property
    def determinant(self) -> int:
        return knot_determinant(self)


def knot_determinant(r) -> int:
    """``|Delta(-1)|`` by exact substitution."""
    p = r.delta if isinstance(r, AlexanderResult) else r
    v = abs(p(-1))
    if v.denominator != 1:
        raise InternalInconsistency(f"Delta(-1) = {v} is not an integer")
    return int(v)


def continuant(a: Sequence, l: Sequence | None = None, u: Sequence | None = None):
    """``K_n`` from ``K_m = a_m K_{m-1} - l_m u_{m-1} K_{m-2}`` with ``K_0 = 1``.

    Unit off-diagonals when ``l`` and ``u`` are omitted. Works over any ring
    whose elements support ``+``, ``-``, ``*`` with integers.
    """
    k_prev, k = 1, None
    for m, am in enumerate(a):
        if k is None:
            k_prev, k = 1, am
            continue
        off = 1 if l is None else l[m] * u[m - 1]
        k_prev, k = k, am * k - off * k_prev
    return 1 if k is None else k


def _as_laurent(x: RatFunc, what: str) -> LaurentPoly:
    if not x.is_laurent():
        raise InternalInconsistency(f"{what} did not clear denominators: {x}")
    return x.num


# ---------------------------------------------------------------------------
# 2-bridge knots


def closure_presentation(g: Matrix, odd: bool, label: str) -> tuple[LaurentPoly, Matrix]:
    """``G' = P G Q`` for a four-strand layer matrix and its polynomial.

    Every entry of ``G'`` is ``+-Delta`` up to a unit; anything else means an
    orientation error upstream.
    """
    if g.shape != (4, 4):
        raise InvalidInput(f"the 2-bridge closure needs a 4 x 4 layer matrix, got {g.nrows} x {g.ncols}")
    gp = (P_ODD if odd else P_EVEN) @ g @ Q_CLOSE
    entries = [_as_laurent(x, "closure matrix") for row in gp.entries for x in row]
    if any(e.is_zero() for e in entries):
        raise InternalInconsistency(f"closure matrix of {label} has a zero entry")
    normals = {normalize_alexander(e) for e in entries}
    if len(normals) != 1 or any(e != entries[0] and e != -entries[0] for e in entries):
        raise InternalInconsistency(f"closure matrix entries of {label} disagree beyond sign")
    return normals.pop(), gp


def alex_rational_span(p: int, q: int) -> AlexanderResult:
    d = rational_2bridge_expr(p, q)
    g = at_tangle(d.expr).basic_map()
    delta, gp = closure_presentation(g, d.odd, f"b({p},{q})")
    return AlexanderResult(f"b({p},{q})", delta, "span", gp, d.mirror_applied, gp.kernel().ncols)


def alex_tangle(e, closure: str | None = None, mode: str = "fast") -> tuple:
    """The span of a tangle expression and, for a four-strand braid-like
    tangle on ``(+, -, +, -)``, the polynomial of its ``even`` or ``odd``
    plat closure.
    """
    span = at_tangle(e, mode=mode)
    if closure is None:
        return span, None
    if closure not in ("even", "odd"):
        raise InvalidInput(f"closure must be 'even' or 'odd', got {closure!r}")
    sig = ("+", "-", "+", "-")
    if e.source != sig or e.target != sig:
        raise InvalidInput("plat closure needs a tangle (+,-,+,-) -> (+,-,+,-)")
    g = span.basic_map()
    if g is None:
        raise InvalidInput("plat closure needs a tangle whose span is a map")
    delta, gp = closure_presentation(g, closure == "odd", "tangle")
    return span, AlexanderResult(to_text(e), delta, "span", gp, False, gp.kernel().ncols)


def rational_continuant_args(ks: Sequence[int]) -> list:
    one_t = ONE - T
    one_ti = ONE - T_INV
    return [k * one_t if i % 2 == 0 else -k * one_ti for i, k in enumerate(ks)]


def alex_rational_continuant(p: int, q: int) -> AlexanderResult:
    d = rational_2bridge_expr(p, q)
    args = rational_continuant_args(d.ks)
    k = continuant(args)
    k = k if isinstance(k, LaurentPoly) else LaurentPoly.constant(k)
    return AlexanderResult(f"b({p},{q})", normalize_alexander(k), "continuant", tuple(args), d.mirror_applied)


# ---------------------------------------------------------------------------
# pretzel knots


def band_matrices(spec: PretzelSpec) -> tuple:
    dec = pretzel_expr(spec)
    return dec, tuple(at_tangle(b.expr).basic_map() for b in dec.bands)


def pretzel_closure_matrices(n: int) -> tuple[Matrix, Matrix]:
    """The maps ``C^n -> C^2n`` (bottom) and ``C^2n -> C^n`` (top) of the cyclic closure."""
    bottom = [[0] * n for _ in range(2 * n)]
    for i in range(n):
        bottom[2 * i][i] = 1
        bottom[2 * i + 1][(i + 1) % n] = 1
    top = [[0] * (2 * n) for _ in range(n)]
    top[0][0] = -1
    top[0][2 * n - 1] += 1
    for k in range(1, n):
        top[k][2 * k - 1] = 1
        top[k][2 * k] = -1
    return Matrix(top, 2 * n), Matrix(bottom, n)


def pretzel_tridiagonal(blocks: Sequence[Matrix]) -> CyclicTridiagonal:
    """Read ``M = P D Q`` off the band matrices without multiplying."""
    n = len(blocks)
    a, u, l = [], [], []
    for k in range(n):
        prev, cur = blocks[k - 1], blocks[k]
        a.append(prev[1, 1] - cur[0, 0])
        u.append(-cur[0, 1])
        l.append(prev[1, 0])
    return CyclicTridiagonal(n, tuple(a), tuple(u), tuple(l))


def alex_pretzel_span(spec: PretzelSpec) -> AlexanderResult:
    dec, blocks = band_matrices(spec)
    top, bottom = pretzel_closure_matrices(spec.n)
    m = top @ Matrix.block_diag(*blocks) @ bottom
    if m != pretzel_tridiagonal(blocks).matrix():
        raise InternalInconsistency(f"closure of {spec} is not the expected cyclic tridiagonal matrix")
    delta = _as_laurent(m.minor(0, 0).det(), "pretzel minor")
    if delta.is_zero():
        raise InternalInconsistency(f"vanishing minor for {spec}")
    return AlexanderResult(str(spec), normalize_alexander(delta), "span", m)


def alex_pretzel_continuant(spec: PretzelSpec) -> AlexanderResult:
    dec, d = band_matrices(spec)
    n = spec.n
    a = [d[k][1, 1] - d[k + 1][0, 0] for k in range(n - 1)]
    u = [d[k + 1][0, 1] for k in range(n - 1)]
    l = [-d[k][1, 0] for k in range(n - 1)]
    k = continuant(a, l, u)
    k = k if isinstance(k, RatFunc) else RatFunc(k)
    delta = _as_laurent(k, "pretzel continuant")
    return AlexanderResult(str(spec), normalize_alexander(delta), "continuant", (tuple(a), tuple(u), tuple(l)))


def elementary_symmetric(q: Sequence[int], k: int) -> int:
    coeffs = [1]
    for x in q:
        coeffs = [a + x * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs[k] if 0 <= k < len(coeffs) else 0


def _qneg(n: int) -> RatFunc:
    return RatFunc(qint(n, "at_neg_t"))


def alex_pretzel_closed(spec: PretzelSpec) -> AlexanderResult:
    dec = pretzel_expr(spec)
    q = dec.spec.q
    n = len(q)
    if dec.case == "odd":
        tm, tp = T - 1, T + 1
        total = LaurentPoly()
        for i in range(0, n, 2):
            total = total + tm ** i * tp ** (n - 1 - i) * elementary_symmetric(q, i)
        delta = total.scale(Fraction(1, 2 ** (n - 1)))
    else:
        odd_idx = q[0::2]  # q_1, q_3, ...
        even_idx = q[1::2]  # q_2, q_4, ...
        if dec.case == "even_2p":
            factor = RAT_ONE
            for x in odd_idx:
                factor = factor * _qneg(-x)
            for x in even_idx:
                factor = factor * _qneg(x)
            s = RatFunc()
            for x in even_idx:
                s = s + RAT_ONE / _qneg(x)
            for x in odd_idx:
                s = s - RAT_ONE / _qneg(-x)
        else:
            q1 = q[0]
            factor = _qneg(-2) * Fraction(q1, 2)
            for x in odd_idx[1:]:
                factor = factor * _qneg(-x)
            for x in even_idx:
                factor = factor * _qneg(x)
            s = RatFunc()
            for x in even_idx:
                s = s + RAT_ONE / _qneg(x)
            for x in odd_idx[1:]:
                s = s - RAT_ONE / _qneg(-x)
            s = s + RatFunc(Fraction(2, q1)) / (RAT_T * _qneg(-2))
        delta = _as_laurent(factor * s, "closed pretzel formula")
    return AlexanderResult(str(spec), normalize_alexander(delta), "closed", dec.case)


# ---------------------------------------------------------------------------


_RATIONAL = {"span": alex_rational_span, "continuant": alex_rational_continuant}
_PRETZEL = {"span": alex_pretzel_span, "continuant": alex_pretzel_continuant, "closed": alex_pretzel_closed}


def _run(table: dict, routes, arg, label: str) -> dict:
    if routes == "all":
        routes = tuple(table)
    elif isinstance(routes, str):
        routes = (routes,)
    out = {}
    for r in routes:
        if r not in table:
            raise InvalidInput(f"unknown route {r!r} for {label}; choose from {', '.join(table)}")
        out[r] = table[r](*arg)
    deltas = {str(res.delta) for res in out.values()}
    if len(deltas) > 1:
        detail = "; ".join(f"{r}: {res.delta}" for r, res in out.items())
        raise RouteMismatch(f"routes disagree for {label}: {detail}")
    return out


def alexander_rational(p: int, q: int, routes="all") -> dict:
    """Results keyed by route; raises :class:`RouteMismatch` if they differ."""
    return _run(_RATIONAL, routes, (p, q), f"b({p},{q})")


def alexander_pretzel(spec: PretzelSpec, routes="all") -> dict:
    return _run(_PRETZEL, routes, (spec,), str(spec))
