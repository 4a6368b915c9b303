"""The specialization ``t = -1``: slopes, rational tangles, Fox colorings, Plücker points.

At ``t = -1`` the span of a rational tangle is the basic span of
``f^s = id + s h`` with ``h = [[1, -1], [1, -1]]`` (or, for ``s = infinity``,
the rotation of the identity span). The tangle's fraction is ``-1/s``.

Boundary points are ordered ``(NW, NE, SW, SE)``; the source of a tangle is
its bottom ``(SW, SE)`` and the target its top ``(NW, NE)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegeneratePlane,
    DivisionByZero,
    InfiniteSlope,
    InternalInconsistency,
    InvalidInput,
    NotRationalShape,
    RouteMismatch,
    TrivialColoring,
)
from .functor import H, at_tangle, trace_tangle
from .linalg import Matrix, Span, identity_span, span_canonicalize, span_from_map, span_rotate2
from .tangle import Gen, RationalSpec, TangleExpr

BOUNDARY = ("NW", "NE", "SW", "SE")
_ROW = {"SW": 0, "SE": 1, "NW": 2, "NE": 3}  # rows of the stacked span matrix


# ---------------------------------------------------------------------------
# slopes


@dataclass(frozen=True)
class Slope:
    """Projective pair ``[p : q]`` standing for ``p/q``; ``[1 : 0]`` is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise InvalidInput("[0 : 0] is not a slope")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def of(cls, x) -> "Slope":
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def to_fraction(self) -> Fraction:
        if self.is_infinite:
            raise InfiniteSlope("the infinite slope has no finite value")
        return Fraction(self.p, self.q)

    def tangle_fraction(self) -> RationalSpec:
        """``-1/s``, the fraction of a rational tangle with this slope."""
        return RationalSpec(-self.q, self.p)

    @classmethod
    def from_tangle_fraction(cls, r: RationalSpec) -> "Slope":
        return cls(-r.q, r.p)

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(Fraction(self.p, self.q))


def slope_compose(s1: Slope, s2: Slope) -> Slope:
    """``f^s2 . f^s1 = f^(s1 + s2)``."""
    if s1.is_infinite or s2.is_infinite:
        raise InfiniteSlope("composition with the infinite slope is only defined on spans")
    return Slope.of(s1.to_fraction() + s2.to_fraction())


def slope_rotate(s: Slope) -> Slope:
    """Quarter turn: ``s -> -1/s``, exchanging 0 and infinity."""
    return Slope(-s.q, s.p)


def basic_span(s: Slope) -> Span:
    """The span of ``f^s`` at ``t = -1``; for infinity the rotated identity."""
    if s.is_infinite:
        return span_rotate2(identity_span(2))
    return span_from_map(Matrix.identity(2) + H.scale(s.to_fraction()))


def tangle_span(r: RationalSpec) -> Span:
    """Expected ``t = -1`` span of the rational tangle with fraction ``r``."""
    return basic_span(Slope.from_tangle_fraction(r))


# ---------------------------------------------------------------------------
# classification


def span_at_minus_one(e: TangleExpr, route: str = "substitute") -> Span:
    """``substitute`` evaluates symbolically then sets ``t = -1``; ``fibre`` works at ``-1`` throughout."""
    if route == "fibre":
        return at_tangle(e, t=-1)
    if route != "substitute":
        raise InvalidInput(f"unknown route {route!r}")
    try:
        return at_tangle(e).evaluate(-1)
    except DivisionByZero as exc:
        raise InternalInconsistency(f"pole at t = -1 in the span of {e}: {exc}") from None


def slope_of_span(s: Span) -> Slope:
    """Read ``s`` off a span equivalent to ``f^s`` or to the rotated identity."""
    if s.src_dim != 2 or s.tgt_dim != 2:
        raise NotRationalShape(f"expected a span 2 -> 2, got {s.src_dim} -> {s.tgt_dim}")
    m = s.basic_map()
    if m is not None:
        d = m - Matrix.identity(2)
        x = d[0, 0]
        if not x.is_constant() or d != H.scale(x):
            raise NotRationalShape("basic map is not of the form id + s h")
        return Slope.of(x.to_fraction())
    if span_canonicalize(s) == span_canonicalize(basic_span(Slope(1, 0))):
        return Slope(1, 0)
    raise NotRationalShape("span at t = -1 is neither basic of the form id + s h nor the rotated identity")


@dataclass(frozen=True)
class Classification:
    slope: Slope
    fraction: RationalSpec
    span: Span


def classify_rational(e: TangleExpr, check_routes: bool = True) -> Classification:
    """Slope and fraction of a rational tangle from its ``t = -1`` span.

    With ``check_routes`` the symbolic-then-substitute span is compared with
    the direct fibre computation. On tangles that are not rational the answer
    is only meaningful when the span happens to have the right shape.
    """
    if len(e.source) != 2 or len(e.target) != 2:
        raise NotRationalShape(f"expected a 2-tangle, got {len(e.source)} -> {len(e.target)} points")
    s = span_at_minus_one(e, "substitute")
    if check_routes:
        fib = span_at_minus_one(e, "fibre")
        if span_canonicalize(s) != span_canonicalize(fib):
            raise RouteMismatch(f"substituted and fibre spans at t = -1 differ for {e}")
    slope = slope_of_span(s)
    return Classification(slope, slope.tangle_fraction(), s)


# ---------------------------------------------------------------------------
# colorings


@dataclass(frozen=True)
class ColoringMatrix:
    """Boundary colors ``[[NW, NE], [SW, SE]] = [[a, b], [c, d]]``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def vector(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def rows(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    def diagonal_sum_rule(self) -> bool:
        return self.a - self.b == self.c - self.d

    def affine(self, k, l) -> "ColoringMatrix":
        return ColoringMatrix(*(k * x + l for x in self.vector))

    def is_trivial(self) -> bool:
        return self.a == self.b == self.c == self.d


def fraction_from_coloring(m: ColoringMatrix) -> RationalSpec:
    """``(b - a) / (b - d)``; infinity when ``b = d``."""
    if m.is_trivial():
        raise TrivialColoring("a constant coloring carries no fraction")
    x = Fraction(m.b - m.a)
    y = Fraction(m.b - m.d)
    if y == 0:
        return RationalSpec(1, 0)
    r = x / y
    return RationalSpec(r.numerator, r.denominator)


def fraction_from_plucker_order(m: ColoringMatrix) -> RationalSpec:
    """``(v4 - v3) / (v4 - v2)`` with ``v = (NW, NE, SW, SE)``; opposite in sign to :func:`fraction_from_coloring`."""
    if m.is_trivial():
        raise TrivialColoring("a constant coloring carries no fraction")
    x = Fraction(m.d - m.c)
    y = Fraction(m.d - m.b)
    if y == 0:
        return RationalSpec(1, 0)
    r = x / y
    return RationalSpec(r.numerator, r.denominator)


@dataclass(frozen=True)
class CrossingColors:
    generator: str
    bottom: tuple
    top: tuple
    over: Fraction
    fox_ok: bool


@dataclass(frozen=True)
class Coloring:
    matrix: ColoringMatrix
    crossings: tuple  # of CrossingColors, in expression order

    @property
    def is_integral(self) -> bool:
        vals = list(self.matrix.vector) + [x for c in self.crossings for x in c.bottom + c.top]
        return all(Fraction(x).denominator == 1 for x in vals)


def _over_endpoints(g: Gen) -> tuple:
    """Indices ``(bottom, top)`` joined by the over-strand of a crossing."""
    even = g.k % 2 == 0
    if g.name == "X-":
        even = not even
    return (0, 1) if even else (1, 0)


def _check_crossing(g: Gen, bottom: tuple, top: tuple) -> CrossingColors:
    ob, ot = _over_endpoints(g)
    over = bottom[ob]
    unders = bottom[1 - ob] + top[1 - ot]
    ok = top[ot] == over and 2 * over == unders
    return CrossingColors(f"{g.name}@{g.k}", bottom, top, over, ok)


def _collect(node, v: Matrix, out: list) -> None:
    e = node.expr
    if isinstance(e, Gen) and e.is_crossing:
        lv = node.span.left @ v
        rv = node.span.right @ v
        bottom = tuple(lv[i, 0].to_fraction() for i in range(2))
        top = tuple(rv[i, 0].to_fraction() for i in range(2))
        out.append(_check_crossing(e, bottom, top))
        return
    for child, proj in node.children:
        _collect(child, proj @ v, out)


def coloring_propagate(e: TangleExpr, seed: Sequence, points: Sequence[str] = ("SW", "SE")) -> Coloring:
    """Extend colors on two boundary points to a Fox coloring of the whole tangle.

    Every crossing is checked against ``2 * over = under1 + under2``; a
    failure means the span and the diagram disagree and raises.
    """
    if len(e.source) != 2 or len(e.target) != 2:
        raise NotRationalShape("colorings are defined here for 2-tangles")
    if len(seed) != 2 or len(points) != 2 or points[0] == points[1]:
        raise InvalidInput("need two colors on two distinct boundary points")
    for p in points:
        if p not in _ROW:
            raise InvalidInput(f"unknown boundary point {p!r}; use one of {', '.join(BOUNDARY)}")
    root = trace_tangle(e, t=-1)
    st = root.span.stacked()
    a = Matrix([st.row(_ROW[p]) for p in points], st.ncols)
    if a.nrows != a.ncols or not a.is_invertible():
        raise InvalidInput(f"colors on {points[0]}, {points[1]} do not determine a coloring of this tangle")
    v = a.inverse() @ Matrix([[Fraction(x)] for x in seed], 1)
    bnd = st @ v
    vals = {p: bnd[_ROW[p], 0].to_fraction() for p in BOUNDARY}
    m = ColoringMatrix(vals["NW"], vals["NE"], vals["SW"], vals["SE"])
    crossings: list = []
    _collect(root, v, crossings)
    bad = [c for c in crossings if not c.fox_ok]
    if bad:
        raise InternalInconsistency(f"Fox rule fails at {bad[0].generator}: {bad[0].bottom} -> {bad[0].top}")
    return Coloring(m, tuple(crossings))


def boundary_coloring(s: Span) -> ColoringMatrix:
    """A canonical nontrivial coloring from the image of a ``t = -1`` span.

    Shifted so ``SW = 0``, scaled to coprime integers, sign fixed so the
    first nonzero of ``SE, NE, NW`` is positive.
    """
    ech = span_canonicalize(s).stacked_echelon
    cols = [[ech[i, j].to_fraction() for i in range(4)] for j in range(ech.ncols)]
    v = next((c for c in cols if len(set(c)) > 1), None)
    if v is None:
        raise TrivialColoring("the span admits only constant colorings")
    sw = v[_ROW["SW"]]
    v = [x - sw for x in v]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    nw, ne, sw_, se = ints[_ROW["NW"]], ints[_ROW["NE"]], ints[_ROW["SW"]], ints[_ROW["SE"]]
    lead = next(x for x in (se, ne, nw) if x)
    if lead < 0:
        nw, ne, sw_, se = -nw, -ne, -sw_, -se
    return ColoringMatrix(Fraction(nw), Fraction(ne), Fraction(sw_), Fraction(se))


# ---------------------------------------------------------------------------
# Plücker geometry

PLUCKER_INDEX = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class PluckerPoint:
    p12: int
    p13: int
    p14: int
    p23: int
    p24: int
    p34: int

    @property
    def coords(self) -> tuple:
        return (self.p12, self.p13, self.p14, self.p23, self.p24, self.p34)

    def quadric(self) -> int:
        return self.p12 * self.p34 - self.p13 * self.p24 + self.p14 * self.p23

    def line_equations(self) -> tuple:
        """Residuals of the three Schubert equations and of ``p12 + p13 - p14 = 0``."""
        p12, p13, p14, p23, p24, p34 = self.coords
        return (p12 - p13 + p23, p12 - p14 + p24, p13 - p14 + p34, p12 + p13 - p14)

    def projectively_equal(self, other: "PluckerPoint") -> bool:
        a, b = self.coords, other.coords
        return all(a[i] * b[j] == a[j] * b[i] for i in range(6) for j in range(6))


def _reduced(coords: Sequence) -> PluckerPoint:
    fr = [Fraction(x) for x in coords]
    if not any(fr):
        raise DegeneratePlane("the two vectors do not span a plane")
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    return PluckerPoint(*(x // g for x in ints))


def plucker_from_vectors(u: Sequence, w: Sequence) -> PluckerPoint:
    """Coordinates ``p_ij = u_i w_j - u_j w_i`` of the plane spanned by ``u`` and ``w``."""
    return _reduced([u[i - 1] * w[j - 1] - u[j - 1] * w[i - 1] for i, j in PLUCKER_INDEX])


def plucker_point(v: Sequence) -> PluckerPoint:
    """Plane through ``v0 = (1, 1, 1, 1)`` and ``v``: ``p_ij = v_j - v_i``."""
    if len(v) != 4:
        raise InvalidInput("a boundary coloring has four values")
    return plucker_from_vectors((1, 1, 1, 1), v)


def span_plucker(s: Span) -> PluckerPoint:
    """The plane of boundary colorings of a ``t = -1`` span, in ``(NW, NE, SW, SE)`` order."""
    ech = span_canonicalize(s).stacked_echelon
    if ech.ncols != 2:
        raise DegeneratePlane(f"image of the span has dimension {ech.ncols}, not 2")
    order = [_ROW[p] for p in BOUNDARY]
    u = [ech[i, 0].to_fraction() for i in order]
    w = [ech[i, 1].to_fraction() for i in order]
    return plucker_from_vectors(u, w)


def phi(p12: int, p13: int) -> PluckerPoint:
    """The rational curve ``[p12 : p13] -> [p12 : p13 : p12+p13 : p13-p12 : p13 : p12]``."""
    return _reduced([p12, p13, p12 + p13, p13 - p12, p13, p12])


@dataclass(frozen=True)
class CurveCheck:
    on_curve: bool
    quadric: int
    lines: tuple
    parameter: tuple  # [p12 : p13]
    fraction: RationalSpec | None  # p12 / p13


def verify_rational_curve(pt: PluckerPoint) -> CurveCheck:
    """Whether ``pt`` lies on the line cut out by the four linear equations (and the quadric)."""
    q = pt.quadric()
    lines = pt.line_equations()
    ok = q == 0 and not any(lines) and pt.p12 == pt.p34
    frac = RationalSpec(pt.p12, pt.p13) if (pt.p12, pt.p13) != (0, 0) else None
    return CurveCheck(ok, q, lines, (pt.p12, pt.p13), frac)


# ---------------------------------------------------------------------------


def classification_record(e: TangleExpr) -> dict:
    """Everything the CLI reports for one tangle, as plain data."""
    c = classify_rational(e)
    m = boundary_coloring(c.span)
    pt = plucker_point(m.vector)
    if not pt.projectively_equal(span_plucker(c.span)):
        raise InternalInconsistency("coloring plane and span image disagree")
    curve = verify_rational_curve(pt)
    return {
        "fraction": str(c.fraction),
        "slope": str(c.slope),
        "coloring_matrix": [[int(x) for x in row] for row in m.rows],
        "coloring_fraction": str(fraction_from_coloring(m)),
        "plucker_fraction": str(fraction_from_plucker_order(m)),
        "plucker": list(pt.coords),
        "on_curve": curve.on_curve,
    }
