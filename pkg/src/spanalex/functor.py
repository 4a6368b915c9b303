"""Evaluation of tangle expressions as spans over Q(t).

``fast`` mode replaces powers of crossings by closed-form braiding matrices
and rotates a 2-tangle span by permuting its boundary rows. ``generators``
mode expands every power into single crossings and realizes every rotation
with cups and caps, so it shares no shortcuts with ``fast`` and serves as a
differential oracle.

Passing ``t=c`` for a rational ``c`` evaluates the fibre at ``t = c``
directly instead of symbolically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import RAT_ONE, RAT_T, qint
from .errors import InvalidInput
from .linalg import (
    Matrix,
    Span,
    identity_span,
    span_compose,
    span_compose_with_projections,
    span_from_map,
    span_rotate2,
    span_tensor,
)
from .tangle import Compose, Gen, Id, Power, Rotate, Tensor, TangleExpr, compose, inverse_tangle

_T_INV = RAT_ONE / RAT_T


def _at(m: Matrix, t) -> Matrix:
    return m if t is None else m.evaluate(Fraction(t))


def f_plus(variant: str = "at_t") -> Matrix:
    x = RAT_T if variant == "at_t" else _T_INV
    return Matrix([[1 - x, x], [1, 0]])


def f_minus(variant: str = "at_t") -> Matrix:
    x = RAT_T if variant == "at_t" else _T_INV
    return Matrix([[0, 1], [1 / x, 1 - 1 / x]])


H = Matrix([[1, -1], [1, -1]])
SWAP = Matrix([[0, 1], [1, 0]])
DIAGONAL = Matrix([[1], [1]])

_TABLE = {
    ("X+", 0): (f_plus, "at_t"),
    ("X+", 1): (f_minus, "at_t"),
    ("X+", 2): (f_plus, "at_t_inv"),
    ("X+", 3): (f_minus, "at_t_inv"),
    ("X-", 0): (f_minus, "at_t"),
    ("X-", 1): (f_plus, "at_t_inv"),
    ("X-", 2): (f_minus, "at_t_inv"),
    ("X-", 3): (f_plus, "at_t"),
}


def crossing_matrix(g: Gen) -> Matrix:
    fn, variant = _TABLE[(g.name, g.k)]
    return fn(variant)


def at_generator(g: Gen, t=None) -> Span:
    if g.is_crossing:
        return span_from_map(_at(crossing_matrix(g), t))
    empty = Matrix([], 1)
    if g.name.startswith("cup"):
        return Span(empty, DIAGONAL)
    return Span(DIAGONAL, empty)


def codirected_power(n: int, sign: str) -> Matrix:
    """Closed form of ``f_+^n`` (``sign='+'``) or ``f_-^n``, for any integer ``n``."""
    m = n if sign in ("+", "plus") else -n
    a = qint(-m, "at_neg_t_inv")
    b = qint(m, "at_neg_t")
    return Matrix([[1 - a, a], [b, 1 - b]])


def alternating_power(n: int, sign: str, variant: str = "at_t") -> Matrix:
    """Closed form of the alternating braiding with ``n`` crossings.

    With ``n = 2k`` or ``2k + 1`` and ``u = (1 - t^-1) h``:
    plus gives ``Id - k u`` or ``f_-(t) - k u``; minus gives ``Id + k u`` or
    ``f_+(t^-1) + k u``.
    """
    k, odd = divmod(n, 2)
    plus = sign in ("+", "plus")
    u = H.scale(RAT_ONE - _T_INV)
    if plus:
        base = f_minus("at_t") if odd else Matrix.identity(2)
        m = base - u.scale(k)
    else:
        base = f_plus("at_t_inv") if odd else Matrix.identity(2)
        m = base + u.scale(k)
    return m.subst_t_inverse() if variant == "at_t_inv" else m


def _braiding_power(child: TangleExpr, n: int):
    """Closed-form matrix for recognised braiding powers, else ``None``."""
    if isinstance(child, Gen) and child.is_crossing and child.k in (0, 2):
        m = codirected_power(n, child.name[1])
        return m.subst_t_inverse() if child.k == 2 else m
    if (
        isinstance(child, Compose)
        and isinstance(child.first, Gen)
        and isinstance(child.then, Gen)
        and child.first.is_crossing
        and child.first.name == child.then.name
    ):
        pair = (child.first.k, child.then.k)
        if pair == (1, 3):
            return alternating_power(2 * n, child.first.name[1], "at_t")
        if pair == (3, 1):
            return alternating_power(2 * n, child.first.name[1], "at_t_inv")
    return None


def _rotate_by_cups(s: Span) -> Span:
    """Quarter turn realised as (cap + id + id) . (id + s + id) . (id + id + cup)."""
    cup = Span(Matrix([], 1), DIAGONAL)
    cap = Span(DIAGONAL, Matrix([], 1))
    one = identity_span(1)
    bottom = span_tensor(identity_span(2), cup)
    middle = span_tensor(span_tensor(one, s), one)
    top = span_tensor(cap, identity_span(2))
    return span_compose(span_compose(bottom, middle), top)


def _repeat(child: TangleExpr, n: int) -> TangleExpr | None:
    if n == 0:
        return None
    base = child if n > 0 else inverse_tangle(child)
    return compose(*([base] * abs(n)))


class _Evaluator:
    def __init__(self, mode: str, t):
        if mode not in ("fast", "generators"):
            raise InvalidInput(f"unknown mode {mode!r}")
        self.mode = mode
        self.t = t
        self.cache: dict = {}

    def __call__(self, e: TangleExpr) -> Span:
        if isinstance(e, Compose):
            return self._chain(e)
        hit = self.cache.get(e)
        if hit is not None:
            return hit
        s = self._eval(e)
        self.cache[e] = s
        return s

    def _eval(self, e: TangleExpr) -> Span:
        if isinstance(e, Gen):
            return at_generator(e, self.t)
        if isinstance(e, Id):
            return identity_span(1)
        if isinstance(e, Tensor):
            out = self(e.children[0])
            for c in e.children[1:]:
                out = span_tensor(out, self(c))
            return out
        if isinstance(e, Rotate):
            if self.mode == "fast":
                return span_rotate2(self(e.child))
            return _rotate_by_cups(self(e.child))
        if isinstance(e, Power):
            if e.n == 0:
                return identity_span(len(e.source))
            if self.mode == "fast":
                m = _braiding_power(e.child, e.n)
                if m is not None:
                    return span_from_map(_at(m, self.t))
                return self._fast_power(e.child, e.n)
            return self(_repeat(e.child, e.n))
        raise InvalidInput(f"unknown node {e!r}")

    def _chain(self, e: Compose) -> Span:
        # long left-nested chains (2-bridge layers) would overflow the stack
        # if walked recursively, and hashing them for the cache is quadratic
        factors = []
        while isinstance(e, Compose):
            factors.append(e.then)
            e = e.first
        out = self(e)
        for f in reversed(factors):
            out = span_compose(out, self(f))
        return out

    def _fast_power(self, child: TangleExpr, n: int) -> Span:
        base = self(child if n > 0 else inverse_tangle(child))
        result = None
        k = abs(n)
        while k:
            if k & 1:
                result = base if result is None else span_compose(result, base)
            k >>= 1
            if k:
                base = span_compose(base, base)
        return result


def at_tangle(e: TangleExpr, mode: str = "fast", t=None) -> Span:
    """The span of ``e``; ``t=None`` keeps ``t`` symbolic."""
    return _Evaluator(mode, t)(e)


# ---------------------------------------------------------------------------
# evaluation with apex bookkeeping (used for colorings)


@dataclass
class TraceNode:
    """Evaluated node plus, per child, the projection of this apex onto the child's apex."""

    expr: TangleExpr
    span: Span
    children: list = field(default_factory=list)


def _selector(rows: int, offset: int, total: int) -> Matrix:
    return Matrix(
        [[1 if j == offset + i else 0 for j in range(total)] for i in range(rows)], total
    )


def trace_tangle(e: TangleExpr, t=None) -> TraceNode:
    """Evaluate keeping every crossing visible (powers are expanded)."""
    if isinstance(e, Gen):
        return TraceNode(e, at_generator(e, t))
    if isinstance(e, Id):
        return TraceNode(e, identity_span(1))
    if isinstance(e, Tensor):
        kids = [trace_tangle(c, t) for c in e.children]
        span = kids[0].span
        for k in kids[1:]:
            span = span_tensor(span, k.span)
        total = span.apex_dim
        node = TraceNode(e, span)
        off = 0
        for k in kids:
            node.children.append((k, _selector(k.span.apex_dim, off, total)))
            off += k.span.apex_dim
        return node
    if isinstance(e, Compose):
        a, b = trace_tangle(e.first, t), trace_tangle(e.then, t)
        span, k1, k2 = span_compose_with_projections(a.span, b.span)
        return TraceNode(e, span, [(a, k1), (b, k2)])
    if isinstance(e, Rotate):
        c = trace_tangle(e.child, t)
        return TraceNode(e, span_rotate2(c.span), [(c, Matrix.identity(c.span.apex_dim))])
    if isinstance(e, Power):
        expanded = _repeat(e.child, e.n)
        if expanded is None:
            return TraceNode(e, identity_span(len(e.source)))
        c = trace_tangle(expanded, t)
        return TraceNode(e, c.span, [(c, Matrix.identity(c.span.apex_dim))])
    raise InvalidInput(f"unknown node {e!r}")
