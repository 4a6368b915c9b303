"""Exact Laurent polynomials and rational functions in one variable ``t`` over Q.

A :class:`LaurentPoly` is stored as an exponent offset, a tuple of integer
numerators and one positive common denominator, so that the common case of
integer coefficients runs on plain integer arithmetic. A :class:`RatFunc` is a
reduced quotient whose denominator is a monic polynomial with nonzero constant
term; powers of ``t`` always live in the numerator. Both are immutable.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

from . import kernels
from .errors import DivisionByZero, InvalidInput, ZeroEvaluationPoint, ZeroPolynomial

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _strip_high(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c) -> int:
    return math.gcd(*c) if c else 0


def _primitive(c: list) -> list:
    g = _content(c)
    if g > 1:
        c = [x // g for x in c]
    if c and c[-1] < 0:
        c = [-x for x in c]
    return c


def _prem(a: list, b: list) -> list:
    """A scalar multiple of ``a mod b`` with integer coefficients."""
    r = list(a)
    nb = len(b)
    lb = b[-1]
    while len(r) >= nb:
        c = r[-1]
        shift = len(r) - nb
        if lb != 1:
            r = [x * lb for x in r]
        for i, y in enumerate(b):
            if y:
                r[shift + i] -= c * y
        r.pop()
        _strip_high(r)
        if r:
            g = _content(r)
            if g > 1:
                r = [x // g for x in r]
    return r


def _poly_gcd(a: list, b: list) -> list:
    """Primitive gcd of two nonzero integer polynomials (positive leading term)."""
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            return b
        a, b = b, _primitive(r)
    return [1]


def _exact_div(a: list, b: list) -> list:
    """Quotient of integer polynomials known to divide exactly over Z."""
    nb = len(b)
    lb = b[-1]
    r = list(a)
    q = [0] * (len(a) - nb + 1)
    for k in range(len(q) - 1, -1, -1):
        top = r[k + nb - 1]
        if top:
            c, rem = divmod(top, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = c
            for i, y in enumerate(b):
                r[k + i] -= c * y
    if any(r[: nb - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Laurent polynomial ``sum c_i t^(min_degree + i)`` with rational coefficients."""

    __slots__ = ("_val", "_num", "_den", "_hash")

    def __init__(self, min_degree: int = 0, coefficients: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coefficients]
        den = math.lcm(*(c.denominator for c in cs)) if cs else 1
        num = [c.numerator * (den // c.denominator) for c in cs]
        self._set(min_degree, num, den)

    def _set(self, val: int, num: list, den: int) -> None:
        lo = 0
        while lo < len(num) and num[lo] == 0:
            lo += 1
        hi = len(num)
        while hi > lo and num[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self._val, self._num, self._den = 0, (), 1
        else:
            num = num[lo:hi]
            if den != 1:
                g = math.gcd(den, *num)
                if g > 1:
                    den //= g
                    num = [x // g for x in num]
            self._val, self._num, self._den = val + lo, tuple(num), den
        self._hash = None

    @classmethod
    def _raw(cls, val: int, num, den: int = 1) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._set(val, list(num), den)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        return cls._raw(0, [c.numerator], c.denominator)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "LaurentPoly":
        c = Fraction(c)
        return cls._raw(k, [c.numerator], c.denominator)

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        return cls(lo, [terms.get(k, 0) for k in range(lo, hi + 1)])

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Read the canonical textual form, e.g. ``t^4 - 3*t^3 + 1/2*t^-1``."""
        s = text.replace(" ", "")
        if not s:
            raise InvalidInput("empty polynomial")
        pos = 0
        terms: dict[int, Fraction] = {}
        pattern = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?t(?:\^(-?\d+))?)?")
        while pos < len(s):
            m = pattern.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise InvalidInput(f"cannot parse polynomial {text!r} at position {pos}")
            if pos > 0 and not m.group(1):
                raise InvalidInput(f"missing sign in polynomial {text!r} at position {pos}")
            if m.group(3) and m.group(3).startswith("*") and m.group(2) is None:
                raise InvalidInput(f"dangling '*' in polynomial {text!r}")
            if m.group(2) is not None and m.group(3) and not m.group(3).startswith("*"):
                raise InvalidInput(f"missing '*' in polynomial {text!r}")
            coeff = Fraction(m.group(2)) if m.group(2) is not None else Fraction(1)
            if m.group(1) == "-":
                coeff = -coeff
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) is not None else 1
            else:
                exp = 0
            terms[exp] = terms.get(exp, Fraction(0)) + coeff
            pos = m.end()
        return cls.from_dict(terms)

    # -- accessors ----------------------------------------------------------

    @property
    def min_degree(self) -> int:
        return self._val

    @property
    def max_degree(self) -> int:
        if not self._num:
            raise ZeroPolynomial("zero polynomial has no degree")
        return self._val + len(self._num) - 1

    @property
    def span(self) -> int:
        """Width ``max_degree - min_degree`` (the degree after normalization)."""
        return len(self._num) - 1 if self._num else -1

    @property
    def coefficients(self) -> tuple:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    def coefficient(self, k: int) -> Fraction:
        i = k - self._val
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def terms(self) -> dict:
        return {self._val + i: Fraction(c, self._den) for i, c in enumerate(self._num) if c}

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return not self._num or (len(self._num) == 1 and self._val == 0)

    def is_monomial(self) -> bool:
        return len(self._num) == 1

    def is_integral(self) -> bool:
        return self._den == 1

    def integer_coefficients(self) -> tuple:
        if self._den != 1:
            raise InvalidInput("polynomial has non-integer coefficients")
        return self._num

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def _addsub(self, other: "LaurentPoly", sign: int) -> "LaurentPoly":
        if not other._num:
            return self
        if not self._num:
            return other if sign > 0 else -other
        lo = min(self._val, other._val)
        hi = max(self._val + len(self._num), other._val + len(other._num))
        d1, d2 = self._den, other._den
        if d1 == d2:
            m1 = m2 = 1
            den = d1
        else:
            den = d1 * d2 // math.gcd(d1, d2)
            m1, m2 = den // d1, den // d2
        out = [0] * (hi - lo)
        o = self._val - lo
        for i, c in enumerate(self._num):
            out[o + i] = c * m1
        o = other._val - lo
        if sign > 0:
            for i, c in enumerate(other._num):
                out[o + i] += c * m2
        else:
            for i, c in enumerate(other._num):
                out[o + i] -= c * m2
        return LaurentPoly._raw(lo, out, den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._addsub(self, -1)

    def __neg__(self):
        return LaurentPoly._raw(self._val, [-c for c in self._num], self._den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._num or not other._num:
            return ZERO
        return LaurentPoly._raw(
            self._val + other._val, kernels.conv(self._num, other._num), self._den * other._den
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise InvalidInput("only monomials have Laurent inverses")
            c = Fraction(self._num[0], self._den) ** n
            return LaurentPoly.monomial(self._val * n, c)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly._raw(self._val, [x * c.numerator for x in self._num], self._den * c.denominator)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        if not self._num:
            return self
        return LaurentPoly._raw(self._val + k, self._num, self._den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._val == other._val and self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._val, self._num, self._den))
        return self._hash

    # -- evaluation and substitution ----------------------------------------

    def __call__(self, x: Scalar) -> Fraction:
        """Exact evaluation at a rational point."""
        x = Fraction(x)
        if x == 0:
            if self._val < 0 and self._num:
                raise ZeroEvaluationPoint("negative exponents at t = 0")
            return self.coefficient(0)
        acc = Fraction(0)
        for c in reversed(self._num):
            acc = acc * x + c
        return acc * x**self._val / self._den

    def eval_complex(self, z: complex) -> complex:
        """Floating evaluation by Horner's rule on the shifted polynomial."""
        z = complex(z)
        if z == 0:
            if self._val < 0 and self._num:
                raise ZeroEvaluationPoint("negative exponents at t = 0")
            return complex(self.coefficient(0))
        coeffs = [float(c) / self._den for c in self._num]
        return kernels.horner(coeffs, z) * z**self._val

    def subst_t_inverse(self) -> "LaurentPoly":
        if not self._num:
            return self
        return LaurentPoly._raw(-(self._val + len(self._num) - 1), self._num[::-1], self._den)

    def subst_neg_t(self) -> "LaurentPoly":
        """``p(-t)``."""
        v = self._val
        return LaurentPoly._raw(v, [c if (v + i) % 2 == 0 else -c for i, c in enumerate(self._num)], self._den)

    # -- display ------------------------------------------------------------

    def __str__(self) -> str:
        if not self._num:
            return "0"
        parts = []
        for i in range(len(self._num) - 1, -1, -1):
            c = Fraction(self._num[i], self._den)
            if c == 0:
                continue
            k = self._val + i
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1)
T_INV = LaurentPoly.monomial(-1)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, operator: str) -> LaurentPoly:
    if operator == "add":
        return a + b
    if operator == "sub":
        return a - b
    if operator == "mul":
        return a * b
    raise InvalidInput(f"unknown operator {operator!r}")


def subst_t_inverse(p):
    return p.subst_t_inverse()


def eval_complex(p: LaurentPoly, z: complex) -> complex:
    return p.eval_complex(z)


# ---------------------------------------------------------------------------
# quantum integers

QINT_ARGS = ("at_t", "at_neg_t", "at_t_inv", "at_neg_t_inv")


def qint(n: int, sign: str = "at_t") -> LaurentPoly:
    """The quantum integer ``[n] = (1 - x^n) / (1 - x)`` at ``x`` in {t, -t, 1/t, -1/t}.

    ``[0] = 0`` and ``[-n] = -x^-1 - ... - x^-n``.
    """
    if sign not in QINT_ARGS:
        raise InvalidInput(f"unknown argument {sign!r}")
    if n == 0:
        return ZERO
    if n > 0:
        p = LaurentPoly._raw(0, [1] * n)
    else:
        p = LaurentPoly._raw(n, [-1] * (-n))
    if sign in ("at_neg_t", "at_neg_t_inv"):
        p = p.subst_neg_t()
    if sign in ("at_t_inv", "at_neg_t_inv"):
        p = p.subst_t_inverse()
    return p


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Representative of ``p`` modulo units ``±t^k``: lowest exponent 0, positive leading term."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no normal form")
    q = p.shift(-p.min_degree)
    if q.coefficient(q.max_degree) < 0:
        q = -q
    return q


def symmetric_alexander(p: LaurentPoly) -> LaurentPoly:
    """The unit multiple of ``p`` whose exponents are centred at zero.

    For odd width the centre is half-integral, so the lower half is kept one
    step larger; positive leading coefficient.
    """
    q = normalize_alexander(p)
    return q.shift(-(q.max_degree // 2))


# ---------------------------------------------------------------------------


class RatFunc:
    """Element of Q(t) as a reduced quotient ``num / den``.

    ``den`` is a monic polynomial with nonzero constant term, so equality of
    representations is equality of functions.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        num = _to_laurent(num)
        if den is None:
            self.num, self.den = num, ONE
            self._hash = None
            return
        den = _to_laurent(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self._canonical(num, den)

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    def _canonical(self, num: LaurentPoly, den: LaurentPoly) -> None:
        self._hash = None
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        num = num.shift(-den._val)
        if len(den._num) == 1:
            self.num = num.scale(Fraction(den._den, den._num[0]))
            self.den = ONE
            return
        nn, dn = list(num._num), list(den._num)
        if len(nn) > 1:
            g = _poly_gcd(nn, dn)
            if len(g) > 1:
                nn = _exact_div(nn, g)
                dn = _exact_div(dn, g)
        # num/den = (nn / num._den) / (dn / den._den); make dn monic
        lead = dn[-1]
        self.num = LaurentPoly._raw(num._val, nn, num._den).scale(Fraction(den._den, lead))
        if len(dn) == 1:
            self.den = ONE
        elif lead > 0:
            self.den = LaurentPoly._raw(0, dn, lead)
        else:
            self.den = LaurentPoly._raw(0, [-x for x in dn], -lead)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "RatFunc":
        return cls._make(LaurentPoly.constant(c), ONE)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        return cls._make(p, ONE)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den == ONE and self.num == ONE

    def is_laurent(self) -> bool:
        return self.den == ONE

    def is_constant(self) -> bool:
        return self.den == ONE and self.num.is_constant()

    def to_laurent(self) -> LaurentPoly:
        if self.den != ONE:
            raise InvalidInput(f"{self} is not a Laurent polynomial")
        return self.num

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise InvalidInput(f"{self} is not constant")
        return self.num.coefficient(0)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(other)
        if isinstance(other, LaurentPoly):
            return RatFunc._make(other, ONE)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == ONE and other.den == ONE:
            return RatFunc._make(self.num + other.num, ONE)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if other.den == ONE:
            return RatFunc._make(self.num + other.num * self.den, self.den)
        if self.den == ONE:
            return RatFunc._make(self.num * other.den + other.num, other.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RAT_ZERO
        if self.den == ONE and other.den == ONE:
            return RatFunc._make(self.num * other.num, ONE)
        if other.is_constant():
            return RatFunc._make(self.num * other.num, self.den)
        if self.is_constant():
            return RatFunc._make(other.num * self.num, other.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        if other.den == ONE and other.num.is_monomial():
            c = other.num
            inv = LaurentPoly.monomial(-c._val, Fraction(c._den, c._num[0]))
            return RatFunc._make(self.num * inv, self.den)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n) if self.den != ONE else RatFunc._make(self.num**n, ONE)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RatFunc._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation and substitution ----------------------------------------

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise DivisionByZero(f"pole of {self} at t = {x}")
        return self.num(x) / d

    def evaluate(self, x: Scalar) -> "RatFunc":
        return RatFunc.constant(self(x))

    def subst_t_inverse(self) -> "RatFunc":
        if self.den == ONE:
            return RatFunc._make(self.num.subst_t_inverse(), ONE)
        return RatFunc(self.num.subst_t_inverse(), self.den.subst_t_inverse())

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def _to_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise InvalidInput(f"cannot interpret {x!r} as a Laurent polynomial")


def ratfunc_arith(a: RatFunc, b: RatFunc, operator: str) -> RatFunc:
    if operator == "add":
        return a + b
    if operator == "sub":
        return a - b
    if operator == "mul":
        return a * b
    if operator == "div":
        return a / b
    raise InvalidInput(f"unknown operator {operator!r}")


RAT_ZERO = RatFunc()
RAT_ONE = RatFunc(1)
RAT_T = RatFunc(T)
