"""The universal affine vertex algebra V(sl_m) at level n, in PBW normal form.

A PBW monomial ``x1(m1) x2(m2) ... xr(mr)|0>`` is stored as a tuple of
``(mode, basis_index)`` pairs sorted ascending, i.e. most negative mode
first and, on ties, by the basis enumeration of :class:`SlAlgebra`
(e's, then h's, then f's).  All modes are <= -1.

The engine works at monomial level with *ring* coefficients: integer
polynomials in ``n`` (``flint.fmpz_poly``) when the level is symbolic, or
plain rationals when the level is a number.  States carry field
coefficients (:class:`RatFunc` or :class:`~fractions.Fraction`); they are
put over a common denominator before entering the monomial engine, so the
only gcd work happens once per output term.

Modes of an arbitrary state come from the iterate formula

    (x_(-k) b)_(p) = sum_j C(k+j-1, j) [ x(-k-j) b_(p+j) - (-1)^k b_(p-k-j) x(j) ]

applied to the leftmost PBW factor; both sums are cut off by the grading.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb, lcm
from typing import Iterable

from flint import fmpz_poly

from .lie import LieElt, SlAlgebra
from .scalars import RatFunc

__all__ = ["PBWState", "AffineVA", "weight_component", "mono_weight", "pbw_basis"]

Mono = tuple


def mono_weight(mono: Mono) -> int:
    return -sum(m for m, _ in mono)


def pbw_basis(dim: int, d: int) -> list:
    """All PBW monomials of weight ``d`` over a basis of size ``dim``, canonically sorted."""
    out = []

    def rec(rest, floor, acc):
        # floor: smallest (mode, idx) still allowed, keeps factors ascending
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(rest, 0, -1):
            for x in range(dim):
                f = (-k, x)
                if floor is not None and f < floor:
                    continue
                acc.append(f)
                rec(rest - k, f, acc)
                acc.pop()
    rec(d, None, [])
    return sorted(out)


def _add_into(acc: dict, d: dict, c) -> None:
    for k, v in d.items():
        t = acc.get(k)
        acc[k] = v * c if t is None else t + v * c


def _prune(acc: dict) -> dict:
    return {k: v for k, v in acc.items() if v != 0}


class PBWState:
    """Finite linear combination of PBW monomials with field coefficients.

    Instances are treated as immutable values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def vacuum(cls, one=1) -> "PBWState":
        return cls({(): one})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __add__(self, other: "PBWState") -> "PBWState":
        out = dict(self.terms)
        for k, v in other.terms.items():
            t = out.get(k)
            out[k] = v if t is None else t + v
        return PBWState(out)

    def __neg__(self):
        return PBWState({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "PBWState") -> "PBWState":
        return self + (-other)

    def __mul__(self, c) -> "PBWState":
        if isinstance(c, PBWState):
            return NotImplemented
        return PBWState({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "PBWState":
        return PBWState({k: v / c for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, PBWState):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("PBWState is unhashable")

    def coefficient(self, mono: Mono):
        return self.terms.get(mono, 0)

    def vacuum_coefficient(self):
        return self.terms.get((), 0)

    def weights(self) -> set:
        return {mono_weight(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def weight(self) -> int:
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError(f"state is not homogeneous (weights {sorted(ws)})")
        return ws.pop()

    def map_coefficients(self, f) -> "PBWState":
        return PBWState({k: f(v) for k, v in self.terms.items()})

    def __repr__(self):
        return f"PBWState({len(self.terms)} terms)"


def weight_component(v: PBWState, d: int) -> PBWState:
    return PBWState({k: c for k, c in v.terms.items() if mono_weight(k) == d})


class AffineVA:
    """Vacuum module of affine sl_m at a symbolic (``level=None``) or rational level."""

    def __init__(self, alg: SlAlgebra, level=None):
        self.alg = alg
        self.symbolic = level is None
        if self.symbolic:
            self.n = RatFunc.gen()
            self._K = fmpz_poly([0, 1])
            self.one = RatFunc(1)
        else:
            self.n = Fraction(level)
            self._K = self.n if self.n.denominator != 1 else int(self.n)
            self.one = Fraction(1)
        self._br = alg.bracket_table
        self._form = alg.form_table
        self._cm_cache: dict = {}
        self._mm_cache: dict = {}
        self._t_cache: dict = {}
        self.stats = Counter()

    # -- identity --------------------------------------------------------------
    @property
    def signature(self) -> str:
        lvl = "symbolic" if self.symbolic else str(self.n)
        return f"sl{self.alg.m}|level={lvl}|{self.alg.convention}"

    def scalar(self, c):
        """Coerce an int/Fraction/RatFunc into this engine's coefficient field."""
        if self.symbolic:
            return RatFunc.coerce(c)
        if isinstance(c, RatFunc):
            return c.constant_value() if c.is_constant() else c(self.n)
        return Fraction(c)

    # -- common denominators ---------------------------------------------------
    def _split(self, v: PBWState):
        if self.symbolic:
            den = fmpz_poly([1])
            for c in v.terms.values():
                if c.den != 1 and c.den != den:
                    den = den * c.den // den.gcd(c.den)
            nums = {}
            for k, c in v.terms.items():
                nums[k] = c.num if c.den == den else c.num * (den // c.den)
            return den, nums
        den = 1
        for c in v.terms.values():
            den = lcm(den, Fraction(c).denominator)
        return den, {k: Fraction(c) * den for k, c in v.terms.items()}

    def _join(self, acc: dict, den) -> PBWState:
        if self.symbolic:
            out = {}
            for k, c in acc.items():
                if c != 0:
                    out[k] = RatFunc(c, den)
            return PBWState(out)
        return PBWState({k: Fraction(c) / den for k, c in acc.items() if c != 0})

    # -- constructors ------------------------------------------------------------
    def vacuum(self) -> PBWState:
        return PBWState.vacuum(self.one)

    def zero(self) -> PBWState:
        return PBWState()

    def _as_lie(self, a) -> dict:
        if isinstance(a, LieElt):
            if a.alg is not self.alg:
                raise ValueError("Lie element from a different algebra")
            return a.coeffs
        if isinstance(a, str):
            return {self.alg.index(a): Fraction(1)}
        return {int(a): Fraction(1)}

    def word(self, factors: Iterable, v: PBWState | None = None) -> PBWState:
        """x1(m1) x2(m2) ... v, applied right to left (default v = vacuum)."""
        out = self.vacuum() if v is None else v
        for a, m in reversed(list(factors)):
            out = self.current_mode(a, m, out)
        return out

    # -- current modes ----------------------------------------------------------
    def current_mode(self, a, m: int, v: PBWState) -> PBWState:
        """a(m) v for a Lie element (or basis index / name) ``a``."""
        if not v:
            return PBWState()
        lie = self._as_lie(a)
        L = 1
        for c in lie.values():
            L = lcm(L, c.denominator)
        den, nums = self._split(v)
        acc: dict = {}
        cm = self._cm
        for idx, c in lie.items():
            ci = int(c * L)
            for mono, coef in nums.items():
                r = cm(idx, m, mono)
                if r:
                    _add_into(acc, r, coef * ci)
        return self._join(acc, den * L)

    def _cm(self, x: int, m: int, v: Mono) -> dict:
        key = (x, m, v)
        hit = self._cm_cache.get(key)
        if hit is not None:
            return hit
        self.stats["current_mode"] += 1
        cm = self._cm
        if m >= 0:
            if not v or m > mono_weight(v):
                res = {}
            else:
                m1, y = v[0]
                rest = v[1:]
                acc: dict = {}
                for mono, c in cm(x, m, rest).items():
                    _add_into(acc, cm(y, m1, mono), c)
                for z, c in self._br[x][y].items():
                    _add_into(acc, cm(z, m + m1, rest), c)
                if m + m1 == 0:
                    f = self._form[x][y]
                    if f:
                        t = acc.get(rest, 0)
                        acc[rest] = t + m * f * self._K
                res = _prune(acc)
        else:
            if not v or (m, x) <= v[0]:
                res = {((m, x),) + v: 1}
            else:
                m1, y = v[0]
                rest = v[1:]
                acc = {}
                for mono, c in cm(x, m, rest).items():
                    _add_into(acc, cm(y, m1, mono), c)
                for z, c in self._br[x][y].items():
                    _add_into(acc, cm(z, m + m1, rest), c)
                res = _prune(acc)
        self._cm_cache[key] = res
        return res

    # -- general state modes ---------------------------------------------------
    def state_mode(self, u: PBWState, p: int, v: PBWState) -> PBWState:
        """u_(p) v: the p-th mode of the field Y(u, z) applied to v."""
        if not u or not v:
            return PBWState()
        du, nu = self._split(u)
        dv, nv = self._split(v)
        acc: dict = {}
        mm = self._mono_mode
        for a, ca in nu.items():
            wa = mono_weight(a)
            for b, cb in nv.items():
                if wa + mono_weight(b) - p - 1 < 0:
                    continue
                r = mm(a, p, b)
                if r:
                    _add_into(acc, r, ca * cb)
        return self._join(acc, du * dv)

    def _mono_mode(self, u: Mono, p: int, v: Mono) -> dict:
        key = (u, p, v)
        hit = self._mm_cache.get(key)
        if hit is not None:
            return hit
        self.stats["state_mode"] += 1
        wu = mono_weight(u)
        wv = mono_weight(v)
        if wu + wv - p - 1 < 0:
            res = {}
        elif not u:
            res = {v: 1} if p == -1 else {}
        elif len(u) == 1:
            mode, x = u[0]
            if mode == -1:
                res = self._cm(x, p, v)
            else:
                res = self._iterate(u, p, v, wv)
        else:
            res = self._iterate(u, p, v, wv)
        self._mm_cache[key] = res
        return res

    def _iterate(self, u: Mono, p: int, v: Mono, wv: int) -> dict:
        mode, x = u[0]
        k = -mode
        b = u[1:]
        wb = mono_weight(b)
        mm = self._mono_mode
        cm = self._cm
        acc: dict = {}
        jmax1 = wb + wv - p - 1
        for j in range(0, jmax1 + 1):
            inner = mm(b, p + j, v)
            if inner:
                c = comb(k + j - 1, j)
                for mono, coef in inner.items():
                    _add_into(acc, cm(x, -k - j, mono), coef * c)
        assert not mm(b, p + jmax1 + 1, v), "iterate truncation bound violated"
        sgn = 1 if k % 2 else -1   # -(-1)^k
        for j in range(0, wv + 1):
            xv = cm(x, j, v)
            if xv:
                c = sgn * comb(k + j - 1, j)
                for mono, coef in xv.items():
                    r = mm(b, p - k - j, mono)
                    if r:
                        _add_into(acc, r, coef * c)
        return _prune(acc)

    # -- translation ---------------------------------------------------------------
    def translate(self, v: PBWState) -> PBWState:
        """T = L(-1): T|0> = 0, T(a(-k) w) = k a(-k-1) w + a(-k) T w."""
        if not v:
            return PBWState()
        den, nums = self._split(v)
        acc: dict = {}
        for mono, c in nums.items():
            r = self._T(mono)
            if r:
                _add_into(acc, r, c)
        return self._join(acc, den)

    def _T(self, v: Mono) -> dict:
        hit = self._t_cache.get(v)
        if hit is not None:
            return hit
        if not v:
            res = {}
        else:
            mode, x = v[0]
            rest = v[1:]
            acc: dict = {}
            _add_into(acc, self._cm(x, mode - 1, rest), -mode)
            for mono, c in self._T(rest).items():
                _add_into(acc, self._cm(x, mode, mono), c)
            res = _prune(acc)
        self._t_cache[v] = res
        return res

    # -- text ----------------------------------------------------------------------
    def mono_str(self, mono: Mono) -> str:
        names = self.alg.names
        return " ".join(f"{names[i]}({m})" for m, i in mono)

    def serialize(self, v: PBWState) -> str:
        """``coef * g1(m1) g2(m2) |0> + ...`` in canonical monomial order."""
        if not v:
            return "0"
        parts = []
        for mono in sorted(v.terms, key=lambda k: (mono_weight(k), k)):
            c = v.terms[mono]
            cs = str(c) if isinstance(c, RatFunc) else str(RatFunc.coerce(c))
            body = (self.mono_str(mono) + " |0>") if mono else "|0>"
            parts.append(f"{cs} * {body}")
        return " + ".join(parts)

    def parse(self, text: str) -> PBWState:
        """Inverse of :meth:`serialize`."""
        import re
        text = text.strip()
        if text == "0":
            return PBWState()
        out = PBWState()
        pat = re.compile(r"\s*(\([^()]*\)(?:\s*/\s*\([^()]*\))?)\s*\*\s*((?:[efh]\[[^\]]*\]\(-?\d+\)\s*)*)\|0>\s*(?:\+|$)")
        pos = 0
        while pos < len(text):
            m = pat.match(text, pos)
            if m is None:
                raise ValueError(f"cannot parse state near {text[pos:pos + 40]!r}")
            coef = self.scalar(RatFunc.parse(m.group(1)))
            factors = [(name, int(md)) for name, md in
                       re.findall(r"([efh]\[[^\]]*\])\((-?\d+)\)", m.group(2))]
            out = out + self.word(factors) * coef
            pos = m.end()
        return out

    def clear_cache(self) -> None:
        self._cm_cache.clear()
        self._mm_cache.clear()
        self._t_cache.clear()
