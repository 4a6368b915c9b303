"""Exact linear algebra over Q(t) and the category of spans of vector spaces.

Matrices hold :class:`~spanalex.algebra.RatFunc` entries. A span
``X <- Z -> Y`` is a pair of matrices with a common column count (the apex
dimension); composition is the fibre product, tensor is the direct sum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import RAT_ONE, RAT_ZERO, LaurentPoly, RatFunc
from .errors import DimensionMismatch, DivisionByZero, InvalidInput


def _rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.constant(x)
    if isinstance(x, LaurentPoly):
        return RatFunc.from_laurent(x)
    raise InvalidInput(f"cannot use {x!r} as a matrix entry")


def _cost(x: RatFunc) -> int:
    return len(x.num._num) + len(x.den._num)


class Matrix:
    """Dense immutable matrix over Q(t) (the ``MatrixQt`` of the design)."""

    __slots__ = ("nrows", "ncols", "entries", "_hash")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        ent = tuple(tuple(_rf(x) for x in r) for r in rows)
        if ncols is None:
            if not ent:
                raise InvalidInput("column count required for a matrix with no rows")
            ncols = len(ent[0])
        if any(len(r) != ncols for r in ent):
            raise DimensionMismatch("ragged matrix rows")
        self.nrows = len(ent)
        self.ncols = ncols
        self.entries = ent
        self._hash = None

    @classmethod
    def _wrap(cls, ent: tuple, ncols: int) -> "Matrix":
        obj = cls.__new__(cls)
        obj.entries = ent
        obj.nrows = len(ent)
        obj.ncols = ncols
        obj._hash = None
        return obj

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls._wrap(tuple((RAT_ZERO,) * c for _ in range(r)), c)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(
            tuple(tuple(RAT_ONE if i == j else RAT_ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_flat(cls, r: int, c: int, flat: Sequence) -> "Matrix":
        if len(flat) != r * c:
            raise DimensionMismatch("entry count does not match shape")
        return cls([flat[i * c : (i + 1) * c] for i in range(r)], c)

    # -- basic access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> RatFunc:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def rows_slice(self, lo: int, hi: int) -> "Matrix":
        return Matrix._wrap(self.entries[lo:hi], self.ncols)

    def cols_slice(self, lo: int, hi: int) -> "Matrix":
        return Matrix._wrap(tuple(r[lo:hi] for r in self.entries), max(0, min(hi, self.ncols) - lo))

    def minor(self, i: int, j: int) -> "Matrix":
        """Delete row ``i`` and column ``j``."""
        ent = tuple(r[:j] + r[j + 1 :] for k, r in enumerate(self.entries) if k != i)
        return Matrix._wrap(ent, self.ncols - 1)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.entries))
        return self._hash

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                if i == j:
                    if not x.is_one():
                        return False
                elif not x.is_zero():
                    return False
        return True

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    # -- arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.ncols
        ocols = [[other.entries[k][j] for k in range(other.nrows)] for j in range(cols)]
        out = []
        for r in self.entries:
            nz = [(k, x) for k, x in enumerate(r) if not x.num.is_zero()]
            row = []
            for j in range(cols):
                oc = ocols[j]
                acc = RAT_ZERO
                for k, x in nz:
                    y = oc[k]
                    if not y.num.is_zero():
                        acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return Matrix._wrap(tuple(out), cols)

    def _zip(self, other: "Matrix", fn) -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(
            tuple(tuple(fn(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.ncols,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        c = _rf(c)
        return self.map(lambda x: x * c)

    def map(self, fn) -> "Matrix":
        return Matrix._wrap(tuple(tuple(fn(x) for x in r) for r in self.entries), self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix._wrap(
            tuple(tuple(self.entries[i][j] for i in range(self.nrows)) for j in range(self.ncols)),
            self.nrows,
        )

    def subst_t_inverse(self) -> "Matrix":
        return self.map(lambda x: x.subst_t_inverse())

    def evaluate(self, x) -> "Matrix":
        """Substitute a rational value for ``t``; raises on a pole."""
        return self.map(lambda e: e.evaluate(x))

    @staticmethod
    def vstack(*ms: "Matrix") -> "Matrix":
        cols = {m.ncols for m in ms}
        if len(cols) != 1:
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix._wrap(tuple(r for m in ms for r in m.entries), cols.pop())

    @staticmethod
    def hstack(*ms: "Matrix") -> "Matrix":
        rows = {m.nrows for m in ms}
        if len(rows) != 1:
            raise DimensionMismatch("hstack needs equal row counts")
        n = rows.pop()
        return Matrix._wrap(
            tuple(tuple(x for m in ms for x in m.entries[i]) for i in range(n)), sum(m.ncols for m in ms)
        )

    @staticmethod
    def block_diag(*ms: "Matrix") -> "Matrix":
        total = sum(m.ncols for m in ms)
        out = []
        off = 0
        for m in ms:
            left = (RAT_ZERO,) * off
            right = (RAT_ZERO,) * (total - off - m.ncols)
            out.extend(left + r + right for r in m.entries)
            off += m.ncols
        return Matrix._wrap(tuple(out), total)

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and pivot columns (unique, so basis-free)."""
        a = [list(r) for r in self.entries]
        m, n = self.nrows, self.ncols
        pivots: list[int] = []
        r = 0
        for c in range(n):
            if r == m:
                break
            best = None
            for i in range(r, m):
                x = a[i][c]
                if not x.num.is_zero() and (best is None or _cost(x) < _cost(a[best][c])):
                    best = i
            if best is None:
                continue
            a[r], a[best] = a[best], a[r]
            inv = a[r][c].inverse()
            a[r] = [x if x.num.is_zero() else x * inv for x in a[r]]
            prow = a[r]
            for i in range(m):
                f = a[i][c]
                if i != r and not f.num.is_zero():
                    a[i] = [x if y.num.is_zero() else x - f * y for x, y in zip(a[i], prow)]
            pivots.append(c)
            r += 1
        return Matrix._wrap(tuple(tuple(row) for row in a), n), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Matrix":
        """Basis of the right kernel as columns, ordered by free column index."""
        red, pivots = self.rref()
        n = self.ncols
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        cols = []
        for f in free:
            v = [RAT_ZERO] * n
            v[f] = RAT_ONE
            for k, p in enumerate(pivots):
                v[p] = -red.entries[k][f]
            cols.append(v)
        return Matrix._wrap(tuple(tuple(c[i] for c in cols) for i in range(n)), len(cols))

    def det(self) -> RatFunc:
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        n = self.nrows
        d = RAT_ONE
        for c in range(n):
            best = None
            for i in range(c, n):
                x = a[i][c]
                if not x.num.is_zero() and (best is None or _cost(x) < _cost(a[best][c])):
                    best = i
            if best is None:
                return RAT_ZERO
            if best != c:
                a[c], a[best] = a[best], a[c]
                d = -d
            piv = a[c][c]
            d = d * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                f = a[i][c]
                if not f.num.is_zero():
                    f = f * inv
                    a[i] = [x if y.num.is_zero() else x - f * y for x, y in zip(a[i], a[c])]
        return d

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        red, pivots = Matrix.hstack(self, Matrix.identity(n)).rref()
        if pivots[:n] != list(range(n)) or (n and len(pivots) < n):
            raise DivisionByZero("matrix is singular")
        return red.cols_slice(n, 2 * n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    # -- display --------------------------------------------------------------

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def __str__(self) -> str:
        if not self.entries:
            return f"[] ({self.nrows}x{self.ncols})"
        return "[" + ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.to_strings()!r})"


MatrixQt = Matrix


def kernel_basis(m: Matrix) -> Matrix:
    return m.kernel()


# ---------------------------------------------------------------------------
# spans


@dataclass(frozen=True)
class Span:
    """A span ``src <- apex -> tgt`` given by its two legs."""

    left: Matrix
    right: Matrix

    def __post_init__(self):
        if self.left.ncols != self.right.ncols:
            raise DimensionMismatch("legs of a span must share the apex")

    @property
    def src_dim(self) -> int:
        return self.left.nrows

    @property
    def tgt_dim(self) -> int:
        return self.right.nrows

    @property
    def apex_dim(self) -> int:
        return self.left.ncols

    def stacked(self) -> Matrix:
        return Matrix.vstack(self.left, self.right)

    def basic_map(self) -> Matrix | None:
        """``right . left^-1`` when the left leg is invertible, else ``None``."""
        if self.left.is_identity():
            return self.right
        if self.left.nrows != self.left.ncols or not self.left.is_invertible():
            return None
        return self.right @ self.left.inverse()

    def map_entries(self, fn) -> "Span":
        return Span(self.left.map(fn), self.right.map(fn))

    def subst_t_inverse(self) -> "Span":
        return Span(self.left.subst_t_inverse(), self.right.subst_t_inverse())

    def evaluate(self, x) -> "Span":
        return Span(self.left.evaluate(x), self.right.evaluate(x))


@dataclass(frozen=True)
class CanonicalSpan:
    src_dim: int
    tgt_dim: int
    apex_dim: int
    stacked_echelon: Matrix


def span_from_map(m: Matrix) -> Span:
    return Span(Matrix.identity(m.ncols), m)


def identity_span(n: int) -> Span:
    i = Matrix.identity(n)
    return Span(i, i)


def span_compose_with_projections(s1: Span, s2: Span) -> tuple[Span, Matrix, Matrix]:
    """``s2 . s1`` together with the projections of the new apex onto both old apexes."""
    if s1.tgt_dim != s2.src_dim:
        raise DimensionMismatch(f"cannot compose: target {s1.tgt_dim} vs source {s2.src_dim}")
    if s2.left.is_identity():
        # fibre product is the graph of s1.right
        return Span(s1.left, s2.right @ s1.right), Matrix.identity(s1.apex_dim), s1.right
    if s1.right.is_identity():
        return Span(s1.left @ s2.left, s2.right), s2.left, Matrix.identity(s2.apex_dim)
    k = Matrix.hstack(s1.right, -s2.left).kernel()
    a1 = s1.apex_dim
    k1 = k.rows_slice(0, a1)
    k2 = k.rows_slice(a1, k.nrows)
    return Span(s1.left @ k1, s2.right @ k2), k1, k2


def span_compose(s1: Span, s2: Span) -> Span:
    """Composite ``s2 . s1``: first ``s1``, then ``s2``."""
    return span_compose_with_projections(s1, s2)[0]


def span_tensor(s1: Span, s2: Span) -> Span:
    return Span(Matrix.block_diag(s1.left, s2.left), Matrix.block_diag(s1.right, s2.right))


def span_canonicalize(s: Span) -> CanonicalSpan:
    red, pivots = s.stacked().transpose().rref()
    ech = red.rows_slice(0, len(pivots)).transpose()
    return CanonicalSpan(s.src_dim, s.tgt_dim, s.apex_dim, ech)


def spans_equivalent(s1: Span, s2: Span) -> bool:
    return span_canonicalize(s1) == span_canonicalize(s2)


def span_rotate2(s: Span) -> Span:
    """Quarter-turn of a 2-tangle span: legs ``(g1, f1)`` and ``(g2, f2)``."""
    if s.src_dim != 2 or s.tgt_dim != 2:
        raise DimensionMismatch("rotation needs a span between 2-dimensional objects")
    f, g = s.left.entries, s.right.entries
    a = s.apex_dim
    return Span(Matrix._wrap((g[0], f[0]), a), Matrix._wrap((g[1], f[1]), a))
