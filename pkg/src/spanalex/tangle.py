"""Oriented tangle expressions and the rational / pretzel builders.

Boundary points carry a sign: ``+`` for a strand oriented upwards (bottom to
top) and ``-`` for downwards. The eight oriented crossings are ``X+@k`` and
``X-@k``, where ``k`` counts counterclockwise quarter turns of the
codirected upward crossing. ``compose(a, b)`` stacks ``b`` on top of ``a``.

Text grammar::

    expr := gen | id(up|down) | tensor(expr, ...) | compose(expr, ...)
          | rot(expr) | pow(expr, int)
    gen  := X+@k | X-@k  (k = 0..3) | cupL | cupR | capL | capR | cup | cap

``cup`` and ``cap`` abbreviate ``cupL`` and ``capL``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BoundaryMismatch, InvalidInput, NotAKnot, TangleSyntaxError

Signature = tuple  # of "+" / "-"

_FLIP = {"+": "-", "-": "+"}

_X_SIGNATURES = {
    0: (("+", "+"), ("+", "+")),
    1: (("-", "+"), ("+", "-")),
    2: (("-", "-"), ("-", "-")),
    3: (("+", "-"), ("-", "+")),
}
_CUPCAP_SIGNATURES = {
    "cupL": ((), ("+", "-")),
    "cupR": ((), ("-", "+")),
    "capL": (("-", "+"), ()),
    "capR": (("+", "-"), ()),
}
GENERATOR_NAMES = ("X+", "X-", "cupL", "cupR", "capL", "capR")


def flip(sig: Signature) -> Signature:
    return tuple(_FLIP[s] for s in sig)


def rotated_signature(src: Signature, tgt: Signature) -> tuple[Signature, Signature]:
    """Boundary of the quarter-turn of a 2-tangle with boundary ``src -> tgt``."""
    return (_FLIP[tgt[0]], src[0]), (tgt[1], _FLIP[src[1]])


def sig_str(sig: Signature) -> str:
    return "(" + ",".join(sig) + ")"


# ---------------------------------------------------------------------------
# AST


class TangleExpr:
    """Base class; every node knows its source and target signatures."""

    source: Signature
    target: Signature

    def __str__(self) -> str:
        return to_text(self)


def _set_boundary(obj, src, tgt):
    object.__setattr__(obj, "source", tuple(src))
    object.__setattr__(obj, "target", tuple(tgt))


@dataclass(frozen=True, eq=True)
class Gen(TangleExpr):
    name: str
    k: int = 0
    source: Signature = field(init=False, compare=False, repr=False)
    target: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.name in ("X+", "X-"):
            if self.k not in _X_SIGNATURES:
                raise InvalidInput(f"rotation class must be 0..3, got {self.k}")
            _set_boundary(self, *_X_SIGNATURES[self.k])
        elif self.name in _CUPCAP_SIGNATURES:
            if self.k != 0:
                raise InvalidInput("cups and caps have no rotation class")
            _set_boundary(self, *_CUPCAP_SIGNATURES[self.name])
        else:
            raise InvalidInput(f"unknown generator {self.name!r}")

    @property
    def is_crossing(self) -> bool:
        return self.name in ("X+", "X-")


@dataclass(frozen=True, eq=True)
class Id(TangleExpr):
    direction: str
    source: Signature = field(init=False, compare=False, repr=False)
    target: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.direction not in ("up", "down"):
            raise InvalidInput(f"direction must be up or down, got {self.direction!r}")
        s = ("+",) if self.direction == "up" else ("-",)
        _set_boundary(self, s, s)


@dataclass(frozen=True, eq=True)
class Tensor(TangleExpr):
    children: tuple
    source: Signature = field(init=False, compare=False, repr=False)
    target: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise InvalidInput("tensor needs at least one factor")
        _set_boundary(
            self,
            sum((c.source for c in self.children), ()),
            sum((c.target for c in self.children), ()),
        )


@dataclass(frozen=True, eq=True)
class Compose(TangleExpr):
    first: TangleExpr
    then: TangleExpr
    source: Signature = field(init=False, compare=False, repr=False)
    target: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.first.target != self.then.source:
            raise BoundaryMismatch(
                f"cannot compose {to_text(self.first)} with target {sig_str(self.first.target)} "
                f"and {to_text(self.then)} with source {sig_str(self.then.source)}",
                self.first.target,
                self.then.source,
            )
        _set_boundary(self, self.first.source, self.then.target)


@dataclass(frozen=True, eq=True)
class Rotate(TangleExpr):
    child: TangleExpr
    source: Signature = field(init=False, compare=False, repr=False)
    target: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.child.source) != 2 or len(self.child.target) != 2:
            raise BoundaryMismatch(
                f"rotation needs a 2-tangle, got {sig_str(self.child.source)} -> {sig_str(self.child.target)}",
                self.child.source,
                self.child.target,
            )
        _set_boundary(self, *rotated_signature(self.child.source, self.child.target))


@dataclass(frozen=True, eq=True)
class Power(TangleExpr):
    child: TangleExpr
    n: int
    source: Signature = field(init=False, compare=False, repr=False)
    target: Signature = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        c = self.child
        if self.n == 1:
            _set_boundary(self, c.source, c.target)
        elif self.n == -1:
            _set_boundary(self, c.target, c.source)
        elif c.source != c.target:
            raise BoundaryMismatch(
                f"power {self.n} needs an endomorphism, got {sig_str(c.source)} -> {sig_str(c.target)}",
                c.source,
                c.target,
            )
        else:
            _set_boundary(self, c.source, c.target)
        if self.n < 0:
            inverse_tangle(c)  # raises if no inverse exists


# -- smart constructors -------------------------------------------------------


def X(sign: str, k: int = 0) -> Gen:
    return Gen("X" + sign, k % 4)


def identity(sig: Signature) -> TangleExpr:
    ids = [Id("up" if s == "+" else "down") for s in sig]
    if not ids:
        raise InvalidInput("identity on the empty signature has no expression")
    return ids[0] if len(ids) == 1 else Tensor(tuple(ids))


def tensor(*children: TangleExpr) -> TangleExpr:
    return Tensor(tuple(children))


def compose(*items: TangleExpr) -> TangleExpr:
    """Left-nested composite: ``compose(a, b, c)`` is ``a`` then ``b`` then ``c``."""
    if not items:
        raise InvalidInput("compose needs at least one argument")
    out = items[0]
    for e in items[1:]:
        out = Compose(out, e)
    return out


def rotate(e: TangleExpr) -> TangleExpr:
    """Quarter turn; a crossing generator just advances its rotation class."""
    if isinstance(e, Gen) and e.is_crossing:
        return Gen(e.name, (e.k + 1) % 4)
    return Rotate(e)


def rotate_inverse(e: TangleExpr) -> TangleExpr:
    return rotate(rotate(rotate(e)))


def power(e: TangleExpr, n: int) -> TangleExpr:
    return e if n == 1 else Power(e, n)


# -- structural maps ----------------------------------------------------------

_REVERSE_CUPCAP = {"cupL": "cupR", "cupR": "cupL", "capL": "capR", "capR": "capL"}


def reverse_tangle(e: TangleExpr) -> TangleExpr:
    """Flip the orientation of every strand."""
    if isinstance(e, Gen):
        if e.is_crossing:
            return Gen(e.name, (e.k + 2) % 4)
        return Gen(_REVERSE_CUPCAP[e.name])
    if isinstance(e, Id):
        return Id("down" if e.direction == "up" else "up")
    if isinstance(e, Tensor):
        return Tensor(tuple(reverse_tangle(c) for c in e.children))
    if isinstance(e, Compose):
        return Compose(reverse_tangle(e.first), reverse_tangle(e.then))
    if isinstance(e, Rotate):
        return Rotate(reverse_tangle(e.child))
    if isinstance(e, Power):
        return Power(reverse_tangle(e.child), e.n)
    raise InvalidInput(f"unknown node {e!r}")


def inverse_tangle(e: TangleExpr) -> TangleExpr:
    """Inverse tangle, for expressions built from crossings, identities, tensors, composites and powers.

    ``X+@k`` and ``X-@(-k)`` are mutually inverse.
    """
    if isinstance(e, Gen):
        if not e.is_crossing:
            raise InvalidInput(f"{e.name} has no inverse")
        return Gen("X-" if e.name == "X+" else "X+", (-e.k) % 4)
    if isinstance(e, Id):
        return e
    if isinstance(e, Tensor):
        return Tensor(tuple(inverse_tangle(c) for c in e.children))
    if isinstance(e, Compose):
        return Compose(inverse_tangle(e.then), inverse_tangle(e.first))
    if isinstance(e, Power):
        return Power(e.child, -e.n)
    raise InvalidInput(f"no inverse available for {to_text(e)}")


def crossing_count(e: TangleExpr) -> int:
    if isinstance(e, Gen):
        return 1 if e.is_crossing else 0
    if isinstance(e, Id):
        return 0
    if isinstance(e, Tensor):
        return sum(crossing_count(c) for c in e.children)
    if isinstance(e, Compose):
        return crossing_count(e.first) + crossing_count(e.then)
    if isinstance(e, Rotate):
        return crossing_count(e.child)
    if isinstance(e, Power):
        return abs(e.n) * crossing_count(e.child)
    raise InvalidInput(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# text form


def to_text(e: TangleExpr) -> str:
    if isinstance(e, Gen):
        return f"{e.name}@{e.k}" if e.is_crossing else e.name
    if isinstance(e, Id):
        return f"id({e.direction})"
    if isinstance(e, Tensor):
        return "tensor(" + ", ".join(to_text(c) for c in e.children) + ")"
    if isinstance(e, Compose):
        return f"compose({to_text(e.first)}, {to_text(e.then)})"
    if isinstance(e, Rotate):
        return f"rot({to_text(e.child)})"
    if isinstance(e, Power):
        return f"pow({to_text(e.child)}, {e.n})"
    raise InvalidInput(f"unknown node {e!r}")


_EXPR_START = ("X+@k", "X-@k", "cupL", "cupR", "capL", "capR", "cup", "cap", "id(", "tensor(", "compose(", "rot(", "pow(")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek_word(self) -> str:
        self._ws()
        j = self.pos
        while j < len(self.text) and (self.text[j].isalnum() or self.text[j] in "+-_"):
            j += 1
        return self.text[self.pos : j]

    def _expect(self, ch: str):
        self._ws()
        if not self.text.startswith(ch, self.pos):
            raise TangleSyntaxError(f"unexpected {self._found()}", self.pos, (repr(ch),))
        self.pos += len(ch)

    def _found(self) -> str:
        if self.pos >= len(self.text):
            return "end of input"
        return repr(self.text[self.pos])

    def _int(self) -> int:
        self._ws()
        j = self.pos
        if j < len(self.text) and self.text[j] in "+-":
            j += 1
        k = j
        while k < len(self.text) and self.text[k].isdigit():
            k += 1
        if k == j:
            raise TangleSyntaxError(f"unexpected {self._found()}", self.pos, ("integer",))
        value = int(self.text[self.pos : k])
        self.pos = k
        return value

    def parse(self) -> TangleExpr:
        e = self.expr()
        self._ws()
        if self.pos != len(self.text):
            raise TangleSyntaxError(f"trailing input {self._found()}", self.pos, ("end of input",))
        return e

    def _list(self) -> list:
        self._expect("(")
        items = [self.expr()]
        while True:
            self._ws()
            if self.text.startswith(",", self.pos):
                self.pos += 1
                items.append(self.expr())
            else:
                break
        self._expect(")")
        return items

    def expr(self) -> TangleExpr:
        self._ws()
        start = self.pos
        word = self._peek_word()
        if word in ("X+", "X-"):
            self.pos += 2
            self._expect("@")
            self._ws()
            if self.pos < len(self.text) and self.text[self.pos] in "0123":
                k = int(self.text[self.pos])
                self.pos += 1
                return Gen(word, k)
            raise TangleSyntaxError(f"unexpected {self._found()}", self.pos, ("0", "1", "2", "3"))
        if word in ("cupL", "cupR", "capL", "capR", "cup", "cap"):
            self.pos += len(word)
            return Gen(word if len(word) == 4 else word + "L")
        if word == "id":
            self.pos += 2
            self._expect("(")
            d = self._peek_word()
            if d not in ("up", "down"):
                raise TangleSyntaxError(f"unexpected {self._found()}", self.pos, ("up", "down"))
            self.pos += len(d)
            self._expect(")")
            return Id(d)
        if word in ("tensor", "compose"):
            self.pos += len(word)
            items = self._list()
            return Tensor(tuple(items)) if word == "tensor" else compose(*items)
        if word == "rot":
            self.pos += 3
            self._expect("(")
            e = self.expr()
            self._expect(")")
            return rotate(e)
        if word == "pow":
            self.pos += 3
            self._expect("(")
            e = self.expr()
            self._expect(",")
            n = self._int()
            self._expect(")")
            return Power(e, n)
        self.pos = start
        raise TangleSyntaxError(f"unexpected {self._found()}", start, _EXPR_START)


def parse_tangle(text: str) -> TangleExpr:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# fractions and continued fractions


@dataclass(frozen=True)
class RationalSpec:
    """Extended rational ``p/q`` in lowest terms with ``q >= 0``; ``1/0`` is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise InvalidInput("0/0 is not an extended rational")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @classmethod
    def parse(cls, text: str) -> "RationalSpec":
        s = text.strip()
        try:
            if "/" in s:
                a, b = s.split("/", 1)
                return cls(int(a), int(b))
            return cls(int(s), 1)
        except ValueError:
            raise InvalidInput(f"cannot parse fraction {text!r}") from None

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def _even_cf_steps(p: int, q: int):
    """Yield ``(2k, remainder)`` pairs of the even continued fraction of ``p/q``."""
    a, b = p, q
    while b != 0:
        k = (a + b) // (2 * b)
        r = a - 2 * k * b
        yield 2 * k, r
        a, b = b, r


def even_cf(p: int, q: int) -> list[int]:
    """The continued fraction of ``p/q`` with all entries even and nonzero.

    Requires ``p > 0`` odd, ``q`` even, ``|q| < p`` and ``gcd(p, q) = 1``.
    """
    if p <= 0 or p % 2 == 0 or q % 2 != 0 or math.gcd(p, q) != 1 or abs(q) >= p and p != 1:
        raise InvalidInput(f"even continued fraction needs p odd > |q|, q even, coprime; got {p}/{q}")
    return [a for a, _ in _even_cf_steps(p, q)]


def cf_eval(a) -> RationalSpec:
    p, q = 1, 0
    for x in reversed(list(a)):
        p, q = x * p + q, p
    return RationalSpec(p, q)


def positive_cf(p: int, q: int) -> list[int]:
    """Odd-length continued fraction ``[a1, ..., an]`` of ``p/q >= 0`` with ``a1 >= 0`` and the rest positive."""
    if q <= 0 or p < 0:
        raise InvalidInput("positive_cf needs p >= 0 and q > 0")
    out = []
    a, b = p, q
    while b:
        out.append(a // b)
        a, b = b, a % b
    if len(out) % 2 == 0:
        out[-1] -= 1
        out.append(1)
    return out


# ---------------------------------------------------------------------------
# braiding builders


def codirected_expr(n: int, sign: str, down: bool = False) -> TangleExpr:
    """``n`` codirected crossings of type ``X<sign>``; upward strands unless ``down``."""
    return power(X(sign, 2 if down else 0), n) if n else identity(("-", "-") if down else ("+", "+"))


def alternating_expr(n: int, sign: str, reverse: bool = False) -> TangleExpr:
    """The alternating braiding with ``n`` crossings.

    Quarter-turned crossings ``X<sign>@1`` and ``X<sign>@3`` alternate,
    starting from ``@1`` (``@3`` when ``reverse``). For ``n = 2m + 1`` the
    odd crossing sits on top; negative ``m`` uses the inverse pair.
    """
    a, b = (3, 1) if reverse else (1, 3)
    m, odd = divmod(n, 2)
    pair = Compose(X(sign, a), X(sign, b))
    if m == 0:
        base = None
    else:
        base = power(pair, m)
    if not odd:
        return base if base is not None else identity(pair.source)
    top = X(sign, a)
    return top if base is None else Compose(base, top)


# ---------------------------------------------------------------------------
# closures


def cup_for(a: str, b: str) -> Gen:
    if (a, b) == ("+", "-"):
        return Gen("cupL")
    if (a, b) == ("-", "+"):
        return Gen("cupR")
    raise BoundaryMismatch(f"no cup ends in ({a},{b})", (), (a, b))


def cap_for(a: str, b: str) -> Gen:
    if (a, b) == ("-", "+"):
        return Gen("capL")
    if (a, b) == ("+", "-"):
        return Gen("capR")
    raise BoundaryMismatch(f"no cap starts at ({a},{b})", (a, b), ())


def _ids(sig) -> list:
    return [Id("up" if s == "+" else "down") for s in sig]


def _nested_cups(sig) -> TangleExpr:
    """Cups joining points 1-4 and 2-3 of a four-point signature."""
    (i1, i4) = _ids((sig[0], sig[3]))
    return compose(cup_for(sig[0], sig[3]), Tensor((i1, cup_for(sig[1], sig[2]), i4)))


def bridge_closure(e: TangleExpr, odd: bool) -> TangleExpr:
    """Close a four-strand expression: cups 1-4, 2-3 below; caps 1-2, 3-4 (even) or 1-4, 2-3 (odd) above."""
    s, u = e.source, e.target
    if len(s) != 4 or len(u) != 4:
        raise BoundaryMismatch("2-bridge closure needs four strands", s, u)
    if odd:
        i1, i4 = _ids((u[0], u[3]))
        top = compose(Tensor((i1, cap_for(u[1], u[2]), i4)), cap_for(u[0], u[3]))
    else:
        top = Tensor((cap_for(u[0], u[1]), cap_for(u[2], u[3])))
    return compose(_nested_cups(s), e, top)


def cyclic_closure(e: TangleExpr) -> TangleExpr:
    """Join points ``2i, 2i+1`` and the two outermost points, above and below."""
    s, u = e.source, e.target
    m = len(s)
    if m != len(u) or m % 2 or m == 0:
        raise BoundaryMismatch("cyclic closure needs 2n points at both ends", s, u)
    if m == 2:
        return compose(cup_for(s[0], s[1]), e, cap_for(u[0], u[1]))
    lo = [Id("up" if s[0] == "+" else "down")]
    lo += [cup_for(s[i], s[i + 1]) for i in range(1, m - 1, 2)]
    lo += [Id("up" if s[-1] == "+" else "down")]
    hi = [Id("up" if u[0] == "+" else "down")]
    hi += [cap_for(u[i], u[i + 1]) for i in range(1, m - 1, 2)]
    hi += [Id("up" if u[-1] == "+" else "down")]
    bottom = compose(cup_for(s[0], s[-1]), Tensor(tuple(lo)))
    top = compose(Tensor(tuple(hi)), cap_for(u[0], u[-1]))
    return compose(bottom, e, top)


# ---------------------------------------------------------------------------
# rational knots


@dataclass(frozen=True)
class BridgeDecomposition:
    """Layered four-strand form of a 2-bridge knot ``b(p, q)``."""

    p: int
    q: int  # the even denominator actually used
    cf: tuple
    expr: TangleExpr
    odd: bool  # closure parity (selects the top caps)
    mirror_applied: bool

    @property
    def ks(self) -> tuple:
        return tuple(a // 2 for a in self.cf)

    def closure(self) -> TangleExpr:
        return bridge_closure(self.expr, self.odd)


def bridge_denominator(p: int, q: int) -> tuple[int, bool]:
    """Even representative ``q'`` in ``(0, p)`` and whether a mirror was taken."""
    if p <= 0:
        raise InvalidInput(f"b(p, q) needs p > 0, got p = {p}")
    if math.gcd(p, q) != 1:
        raise InvalidInput(f"b(p, q) needs gcd(p, q) = 1, got {p}/{q}")
    if p % 2 == 0:
        raise NotAKnot(f"b({p}, {q}) is a 2-component link (p even)")
    q0 = q % p
    if q0 % 2 == 0:
        return q0, False
    return p - q0, True


def rational_2bridge_expr(p: int, q: int) -> BridgeDecomposition:
    """Alternating-braiding layers of ``b(p, q)`` on four strands.

    Layer ``i`` (bottom first) twists strands 3-4 for odd ``i`` and 2-3 for
    even ``i``, with ``|k_i|`` full alternating twists; strand 1 runs upward.
    """
    qe, mirrored = bridge_denominator(p, q)
    cf = even_cf(p, qe)
    if len(cf) % 2:
        raise NotAKnot(f"b({p}, {q}) is a 2-component link (odd-length even continued fraction)")
    layers = []
    for i, a in enumerate(cf, 1):
        k = a // 2
        s = "+" if k > 0 else "-"
        if i % 2:
            twist = power(Compose(X(_FLIP[s], 3), X(_FLIP[s], 1)), abs(k))
            layers.append(Tensor((Id("up"), Id("down"), twist)))
        else:
            twist = power(Compose(X(s, 1), X(s, 3)), abs(k))
            layers.append(Tensor((Id("up"), twist, Id("down"))))
    expr = compose(*layers) if layers else identity(("+", "-", "+", "-"))
    return BridgeDecomposition(p, qe, tuple(cf), expr, len(cf) % 2 == 1, mirrored)


# ---------------------------------------------------------------------------
# rational tangles in canonical form


def _unoriented_twists(kind: str, a: int) -> dict:
    """All oriented versions of ``a`` stacked copies of the unoriented crossing ``[X<kind>]``.

    ``[X+]`` is drawn by ``X+@0``, ``X+@2``, ``X-@1`` and ``X-@3``.
    """
    out: dict = {}

    def add(e):
        out.setdefault((e.source, e.target), e)

    if a == 0:
        for d1 in ("up", "down"):
            for d2 in ("up", "down"):
                add(Tensor((Id(d1), Id(d2))))
        return out
    other = _FLIP[kind]
    add(power(X(kind, 0), a))
    add(power(X(kind, 2), a))
    add(alternating_expr(a, other))
    add(alternating_expr(a, other, reverse=True))
    return out


def rational_canonical_expr(spec: RationalSpec) -> TangleExpr:
    """Nested canonical form ``R^-1([X+]^a1 . R([X-]^a2 . ... R^-1([X+]^an)))``.

    Built from the odd-length nonnegative continued fraction; negative
    fractions use the mirror image. Orientations are chosen so that every
    composite typechecks; the choice is deterministic.
    """
    if spec.is_infinite:
        return rotate(rational_canonical_expr(RationalSpec(0, 1)))
    mirror = spec.p < 0
    cf = positive_cf(abs(spec.p), spec.q)
    inner: dict | None = None
    for i in range(len(cf), 0, -1):
        kind = "+" if i % 2 else "-"
        if mirror:
            kind = _FLIP[kind]
        twists = _unoriented_twists(kind, cf[i - 1])
        if inner is None:
            combined = twists
        else:
            combined = {}
            for (s1, t1), e1 in inner.items():
                for (s2, t2), e2 in twists.items():
                    if t1 == s2:
                        combined.setdefault((s1, t2), Compose(e1, e2))
        rot = rotate_inverse if i % 2 else rotate
        inner = {}
        for e in combined.values():
            r = rot(e)
            inner.setdefault((r.source, r.target), r)
    key = min(inner)
    return inner[key]


# ---------------------------------------------------------------------------
# pretzel knots


@dataclass(frozen=True)
class PretzelSpec:
    q: tuple

    def __post_init__(self):
        q = tuple(int(x) for x in self.q)
        if not q:
            raise InvalidInput("a pretzel needs at least one band")
        if any(x == 0 for x in q):
            raise InvalidInput("pretzel band twists must be nonzero")
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "PretzelSpec":
        body = text.replace(" ", "")
        if body[:2] in ("P(", "p("):
            body = body[1:]
        try:
            return cls(tuple(int(x) for x in body.strip("()").split(",") if x))
        except ValueError:
            raise InvalidInput(f"cannot parse pretzel spec {text!r}") from None

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def is_knot(self) -> bool:
        return is_pretzel_knot(self)[0]

    def __str__(self) -> str:
        return "P(" + ",".join(str(x) for x in self.q) + ")"


def is_pretzel_knot(spec: PretzelSpec) -> tuple[bool, str]:
    evens = sum(1 for x in spec.q if x % 2 == 0)
    if evens == 1:
        return True, "exactly one twist count is even"
    if evens == 0 and spec.n % 2 == 1:
        return True, "all twist counts are odd and the number of bands is odd"
    if evens == 0:
        return False, "all twist counts are odd but the number of bands is even"
    return False, f"{evens} twist counts are even (a knot needs exactly one, or none with n odd)"


@dataclass(frozen=True)
class Band:
    index: int
    q: int
    kind: str  # "alternating" or "codirected"
    sign: str
    variant: str  # "at_t" or "at_t_inv"
    expr: TangleExpr


@dataclass(frozen=True)
class PretzelDecomposition:
    spec: PretzelSpec  # cyclically rotated so an even entry (if any) comes first
    shift: int
    case: str  # "odd", "even_2p" or "even_2p1"
    bands: tuple

    def expr(self) -> TangleExpr:
        return Tensor(tuple(b.expr for b in self.bands))

    def closure(self) -> TangleExpr:
        return cyclic_closure(self.expr())


def pretzel_expr(spec: PretzelSpec) -> PretzelDecomposition:
    ok, reason = is_pretzel_knot(spec)
    if not ok:
        raise NotAKnot(f"{spec} is not a knot: {reason}")
    q = spec.q
    shift = next((i for i, x in enumerate(q) if x % 2 == 0), 0)
    q = q[shift:] + q[:shift]
    rot = PretzelSpec(q)
    bands = []
    if all(x % 2 for x in q):
        case = "odd"
        for i, x in enumerate(q, 1):
            bands.append(Band(i, x, "alternating", "-", "at_t_inv", alternating_expr(x, "-", reverse=True)))
    else:
        case = "even_2p" if len(q) % 2 == 0 else "even_2p1"
        for i, x in enumerate(q, 1):
            if i == 1 and case == "even_2p1":
                bands.append(Band(i, x, "alternating", "+", "at_t", alternating_expr(x, "+")))
            elif i % 2:
                bands.append(Band(i, x, "codirected", "-", "at_t", codirected_expr(x, "-")))
            else:
                bands.append(Band(i, x, "codirected", "-", "at_t_inv", codirected_expr(x, "-", down=True)))
    return PretzelDecomposition(rot, shift, case, tuple(bands))
