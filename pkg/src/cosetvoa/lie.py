"""Type A Lie algebra data: roots, Chevalley basis, brackets and the normalized form.

sl_m is realised in its defining representation::

    e[a_i+...+a_j] -> E_{i,j+1},   f[a_i+...+a_j] -> E_{j+1,i},   h[a_i] -> E_ii - E_{i+1,i+1}

so every structure constant is -1, 0 or +1 and the trace form is the
normalized invariant form ((theta|theta) = 2).

Roots are tuples of coefficients in the simple-root basis; positive roots
of type A are exactly the consecutive sums ``a_i + ... + a_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

__all__ = ["RootDatum", "SlAlgebra", "LieElt", "build_sl", "bracket", "form", "root_name", "parse_root", "segment"]

CONVENTION = "defining-rep:e[a_i..a_j]=E(i,j+1)"

Root = tuple


def simple_root(rank: int, i: int) -> Root:
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


def segment(rank: int, i: int, j: int) -> Root:
    """The root a_i + ... + a_j (1-based, inclusive)."""
    if not 1 <= i <= j <= rank:
        raise ValueError(f"no root a{i}+...+a{j} in rank {rank}")
    return tuple(1 if i - 1 <= k <= j - 1 else 0 for k in range(rank))


def support(root: Root) -> tuple[int, int]:
    """(i, j) with root = +-(a_i + ... + a_j)."""
    nz = [k for k, c in enumerate(root) if c]
    return nz[0] + 1, nz[-1] + 1


def root_name(root: Root) -> str:
    sign = "-" if any(c < 0 for c in root) else ""
    return sign + "+".join(f"a{k + 1}" for k, c in enumerate(root) if c)


def parse_root(text: str, rank: int) -> Root:
    t = text.strip()
    sign = 1
    if t.startswith("-"):
        sign, t = -1, t[1:]
    v = [0] * rank
    for part in t.split("+"):
        part = part.strip()
        if not part.startswith("a"):
            raise ValueError(f"bad root name {text!r}")
        v[int(part[1:]) - 1] += sign
    return tuple(v)


def add_roots(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def neg_root(a: Root) -> Root:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class RootDatum:
    rank: int
    positive: tuple  # ordered by (height, start)

    @classmethod
    def type_a(cls, rank: int) -> "RootDatum":
        roots = [segment(rank, i, j) for i in range(1, rank + 1) for j in range(i, rank + 1)]
        roots.sort(key=lambda r: (sum(r), support(r)[0]))
        return cls(rank, tuple(roots))

    @cached_property
    def all_roots(self) -> frozenset:
        return frozenset(self.positive) | frozenset(neg_root(r) for r in self.positive)

    def is_root(self, r: Root) -> bool:
        return r in self.all_roots

    def is_positive(self, r: Root) -> bool:
        return r in set(self.positive)

    def height(self, r: Root) -> int:
        return sum(r)

    def inner(self, a: Root, b: Root) -> int:
        """(a|b) via the A_rank Cartan matrix."""
        total = 0
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                if i == j:
                    total += 2 * x * y
                elif abs(i - j) == 1:
                    total -= x * y
        return total

    @property
    def highest(self) -> Root:
        return tuple(1 for _ in range(self.rank))


def _unit(m: int, i: int, j: int) -> np.ndarray:
    a = np.zeros((m, m), dtype=np.int64)
    a[i, j] = 1
    return a


@dataclass(eq=False)
class SlAlgebra:
    """sl_m with its Chevalley basis; basis elements are indexed by integers.

    Index order (also the PBW tie-break order): e's by root order, then
    h[a1..a_rank], then f's by root order.
    """

    m: int
    roots: RootDatum
    names: list = field(default_factory=list)
    e_index: dict = field(default_factory=dict)
    f_index: dict = field(default_factory=dict)
    h_index: list = field(default_factory=list)
    bracket_table: list = field(default_factory=list)   # [a][b] -> {c: int}
    form_table: list = field(default_factory=list)      # [a][b] -> int
    cartan_weight: list = field(default_factory=list)   # root (tuple) of each basis element
    convention: str = CONVENTION

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def rank(self) -> int:
        return self.m - 1

    def index(self, name: str) -> int:
        return self.names.index(name)

    def e(self, root: Root) -> "LieElt":
        if root in self.e_index:
            return LieElt(self, {self.e_index[root]: Fraction(1)})
        if neg_root(root) in self.f_index:
            return LieElt(self, {self.f_index[neg_root(root)]: Fraction(1)})
        raise KeyError(root)

    def f(self, root: Root) -> "LieElt":
        return LieElt(self, {self.f_index[root]: Fraction(1)})

    def h(self, root: Root) -> "LieElt":
        """h_alpha for a positive root: sum of the simple coroots over its support."""
        if any(c < 0 for c in root):
            return -self.h(neg_root(root))
        return LieElt(self, {self.h_index[k]: Fraction(c) for k, c in enumerate(root) if c})

    def basis(self, idx: int) -> "LieElt":
        return LieElt(self, {idx: Fraction(1)})

    def structure_constant(self, a: Root, b: Root) -> int:
        """c_{a,b} with [e_a, e_b] = c_{a,b} e_{a+b} (0 if a+b is not a root)."""
        s = add_roots(a, b)
        if not self.roots.is_root(s):
            return 0
        x, y = self.e(a), self.e(b)
        z = self.e(s)
        (zi, zc), = z.coeffs.items()
        br = bracket(x, y)
        return int(br.coeffs.get(zi, 0) / zc)

    def matrix(self, idx: int) -> np.ndarray:
        return self._matrices[idx]


def build_sl(m: int) -> SlAlgebra:
    """Chevalley basis, bracket table and normalized form of sl_m."""
    if m < 2:
        raise ValueError("sl_m needs m >= 2")
    rank = m - 1
    roots = RootDatum.type_a(rank)
    alg = SlAlgebra(m=m, roots=roots)
    mats = []
    for r in roots.positive:
        i, j = support(r)
        alg.e_index[r] = len(mats)
        alg.names.append(f"e[{root_name(r)}]")
        alg.cartan_weight.append(r)
        mats.append(_unit(m, i - 1, j))
    for i in range(1, rank + 1):
        alg.h_index.append(len(mats))
        alg.names.append(f"h[a{i}]")
        alg.cartan_weight.append(tuple(0 for _ in range(rank)))
        mats.append(_unit(m, i - 1, i - 1) - _unit(m, i, i))
    for r in roots.positive:
        i, j = support(r)
        alg.f_index[r] = len(mats)
        alg.names.append(f"f[{root_name(r)}]")
        alg.cartan_weight.append(neg_root(r))
        mats.append(_unit(m, j, i - 1))
    alg._matrices = mats
    dim = len(mats)

    # coordinates: off-diagonal entries read e/f directly; the diagonal is
    # solved against the h_i (E_ii - E_{i+1,i+1}) triangular system
    pos_of = {}
    for idx, a in enumerate(mats):
        if idx in alg.h_index:
            continue
        (r, c), = zip(*np.nonzero(a))
        pos_of[(int(r), int(c))] = idx

    def decompose(x: np.ndarray) -> dict:
        out = {}
        for (r, c), idx in pos_of.items():
            if x[r, c]:
                out[idx] = int(x[r, c])
        # diagonal d with trace 0: d = sum_i c_i (E_ii - E_{i+1,i+1}), c_i = d_1+...+d_i
        acc = 0
        for i in range(rank):
            acc += int(x[i, i])
            if acc:
                out[alg.h_index[i]] = acc
        return out

    alg.bracket_table = [[decompose(mats[a] @ mats[b] - mats[b] @ mats[a]) for b in range(dim)]
                         for a in range(dim)]
    alg.form_table = [[int(np.trace(mats[a] @ mats[b])) for b in range(dim)] for a in range(dim)]
    return alg


class LieElt:
    """Sparse element of sl_m over the Chevalley basis with rational coefficients."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: SlAlgebra, coeffs: dict):
        self.alg = alg
        self.coeffs = {k: Fraction(v) for k, v in coeffs.items() if v}

    def _check(self, other: "LieElt"):
        if other.alg is not self.alg:
            raise ValueError("elements of different Lie algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LieElt(self.alg, out)

    def __neg__(self):
        return LieElt(self.alg, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return LieElt(self.alg, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LieElt) and other.alg is self.alg and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{self.alg.names[k]}" for k, v in sorted(self.coeffs.items()))


def bracket(x: LieElt, y: LieElt) -> LieElt:
    x._check(y)
    out: dict = {}
    table = x.alg.bracket_table
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            for c, s in table[a][b].items():
                out[c] = out.get(c, 0) + ca * cb * s
    return LieElt(x.alg, out)


def form(x: LieElt, y: LieElt) -> Fraction:
    x._check(y)
    table = x.alg.form_table
    return sum((ca * cb * table[a][b] for a, ca in x.coeffs.items() for b, cb in y.coeffs.items()),
               Fraction(0))
