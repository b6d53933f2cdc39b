"""Exact scalars: rationals and rational functions in the level symbol ``n``.

Rationals are plain :class:`fractions.Fraction`.  :class:`RatFunc` is an
element of Q(n) stored as a reduced pair of integer polynomials
(``flint.fmpz_poly``).  Canonical form:

* ``gcd(num, den) == 1`` in Z[n] (this includes the integer content, so
  ``1/(2n^2+4n)`` keeps its 2 in the denominator),
* the leading coefficient of ``den`` is positive,
* zero is ``0/1``.

With this normal form two values are equal iff their representations are.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from flint import fmpq, fmpz_poly

__all__ = ["RatFunc", "ratfunc_eval", "PoleError", "as_poly", "poly_str", "parse_poly"]

SYMBOL = "n"


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


def as_poly(x) -> fmpz_poly:
    if isinstance(x, fmpz_poly):
        return x
    if isinstance(x, int):
        return fmpz_poly([x])
    raise TypeError(f"cannot convert {type(x).__name__} to an integer polynomial")


def poly_str(p: fmpz_poly) -> str:
    """Render an integer polynomial as e.g. ``2*n^2 - 3*n + 1``."""
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            var = SYMBOL if k == 1 else f"{SYMBOL}^{k}"
            body = var if a == 1 else f"{a}*{var}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*n(?:\^(\d+))?)?")


def parse_poly(text: str) -> fmpz_poly:
    """Inverse of :func:`poly_str` (also tolerant of missing spaces)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, digits, var, exp = m.groups()
        if not digits and not var:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if not var else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return fmpz_poly([coeffs.get(k, 0) for k in range(deg + 1)])


class RatFunc:
    """Element of Q(n) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _reduced=False):
        num = as_poly(num)
        den = as_poly(den)
        if not _reduced:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if num == 0:
                den = fmpz_poly([1])
            else:
                g = num.gcd(den)
                if g != 1:
                    num = num // g
                    den = den // g
                # fmpz_poly.gcd carries a positive leading coefficient, so the
                # remaining integer content is already coprime; fix the sign.
                if den.leading_coefficient() < 0:
                    num = -num
                    den = -den
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers ---------------------------------------------------
    @classmethod
    def gen(cls) -> "RatFunc":
        return cls(fmpz_poly([0, 1]), 1, _reduced=True)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, fmpz_poly)):
            return cls(x, 1, _reduced=True)
        if isinstance(x, Rational):
            return cls(int(x.numerator), int(x.denominator))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num == 0

    def __bool__(self):
        return self.num != 0

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(int(self.num.coeffs()[0]) if self.num != 0 else 0,
                        int(self.den.coeffs()[0]))

    # arithmetic -------------------------------------------------------------
    def _other(self, other):
        if isinstance(other, RatFunc):
            return other
        try:
            return RatFunc.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.num == 0:
            return self
        if self.num == 0:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return RatFunc()
            return RatFunc(self.num * other, self.den)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.num == 0 or o.num == 0:
            return RatFunc()
        # cross-cancel before multiplying keeps the gcd work small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num == 0:
            raise ZeroDivisionError("zero denominator")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.num == 0:
            raise ZeroDivisionError("zero denominator")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def key(self) -> tuple:
        return (tuple(int(c) for c in self.num.coeffs()),
                tuple(int(c) for c in self.den.coeffs()))

    def __hash__(self):
        if self._hash is None:
            k = self.key()
            # agree with int/Fraction hashing for constants
            if len(k[0]) <= 1 and len(k[1]) == 1:
                self._hash = hash(Fraction(k[0][0] if k[0] else 0, k[1][0]))
            else:
                self._hash = hash(k)
        return self._hash

    # text ---------------------------------------------------------------------
    def __str__(self):
        if self.den == 1:
            return f"({poly_str(self.num)})"
        return f"({poly_str(self.num)})/({poly_str(self.den)})"

    def __repr__(self):
        return f"RatFunc('{self}')"

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        """Parse ``(p)`` or ``(p)/(q)`` as produced by ``str``."""
        s = text.strip()
        m = re.fullmatch(r"\(([^()]*)\)(?:\s*/\s*\(([^()]*)\))?", s)
        if m is None:
            raise ValueError(f"not a rational function literal: {text!r}")
        num = parse_poly(m.group(1))
        den = parse_poly(m.group(2)) if m.group(2) is not None else fmpz_poly([1])
        return cls(num, den)

    # evaluation ---------------------------------------------------------------
    def __call__(self, n0):
        return ratfunc_eval(self, n0)


def ratfunc_eval(a, n0) -> Fraction:
    """Specialise ``a`` at the rational point ``n0``."""
    if not isinstance(a, RatFunc):
        return Fraction(a)
    n0 = Fraction(n0)
    x = fmpq(n0.numerator, n0.denominator)
    d = a.den(x)
    if d == 0:
        vanishing = [poly_str(f) for f, _ in a.den.factor()[1] if f(x) == 0]
        raise PoleError(f"pole at n = {n0}: denominator factor ({', '.join(vanishing)}) vanishes")
    v = a.num(x) / d
    return Fraction(int(v.p), int(v.q))
