"""Named states of the coset C_{K(sl_{l+1},n)}(K(sl_l,n)) and commutant tests.

Everything is built in the universal affine vertex algebra of sl_{l+1};
no quotient is taken here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .affine import AffineVA, PBWState, mono_weight
from .lie import build_sl, neg_root, root_name, segment

__all__ = ["CosetContext", "PairingError"]


class PairingError(ValueError):
    pass


@dataclass(eq=False)
class CosetContext:
    """Ambient sl_{l+1} at level ``n`` (symbolic when ``level`` is None)."""

    l: int
    level: object = None
    engine: AffineVA = field(init=False)

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l must be >= 1")
        self.alg = build_sl(self.l + 1)
        self.engine = AffineVA(self.alg, self.level)
        self.n = self.engine.n
        self._memo: dict = {}

    # -- roots ------------------------------------------------------------------
    def root(self, i: int, j: int):
        """a_i + ... + a_j."""
        return segment(self.l, i, j)

    @property
    def positive_roots(self):
        return self.alg.roots.positive

    def inner(self, a, b) -> int:
        return self.alg.roots.inner(a, b)

    def heisenberg_line(self):
        """The Cartan element sum_i i*h[a_i] spanning h_l."""
        out = None
        for i in range(1, self.l + 1):
            t = self.alg.h(self.root(i, i)) * i
            out = t if out is None else out + t
        return out

    @property
    def levi_simple(self) -> list:
        return list(range(1, self.l))

    def _positive(self, a):
        return a if any(c > 0 for c in a) else neg_root(a)

    def _cached(self, key, build):
        hit = self._memo.get(key)
        if hit is None:
            hit = build()
            self._memo[key] = hit
        return hit

    # -- sl_2 building blocks ------------------------------------------------------
    def omega_alpha(self, a) -> PBWState:
        """1/(2n(n+2)) [-n h(-2) - h(-1)^2 + 2n e(-1) f(-1)] |0>; equal for a and -a."""
        a = self._positive(a)

        def build():
            V, n, al = self.engine, self.n, self.alg
            h, e, f = al.h(a), al.e(a), al.f(a)
            s = (V.word([(h, -2)]) * (-n) - V.word([(h, -1), (h, -1)])
                 + V.word([(e, -1), (f, -1)]) * (2 * n))
            return s * (1 / (2 * n * (n + 2)))
        return self._cached(("omega", a), build)

    def W_alpha(self, a) -> PBWState:
        def build():
            V, n, al = self.engine, self.n, self.alg
            h, e, f = al.h(a), al.e(a), al.f(a)
            return (V.word([(h, -3)]) * n ** 2
                    + V.word([(h, -2), (h, -1)]) * (3 * n)
                    + V.word([(h, -1), (h, -1), (h, -1)]) * 2
                    - V.word([(h, -1), (e, -1), (f, -1)]) * (6 * n)
                    + (V.word([(e, -2), (f, -1)]) - V.word([(e, -1), (f, -2)])) * (3 * n ** 2))
        return self._cached(("W", a), build)

    # -- coset conformal vector -----------------------------------------------------
    def omega(self) -> PBWState:
        def build():
            n, l = self.n, self.l
            s = PBWState()
            for i in range(1, l + 1):
                s = s + self.omega_alpha(self.root(i, l))
            t = PBWState()
            for i in range(1, l):
                for j in range(i, l):
                    t = t + self.omega_alpha(self.root(i, j))
            return (s - t * (1 / (n + l))) * ((n + 2) / (n + l + 1))
        return self._cached(("omega",), build)

    def central_charge(self):
        n, l = self.n, self.l
        return l * (n - 1) * (2 * n + l + 1) / ((n + l) * (n + l + 1))

    # -- X^(p) and W ----------------------------------------------------------------
    def omega1W(self, a, b) -> PBWState:
        """omega^a_1 W^b."""
        return self._cached(("o1W", a, b),
                            lambda: self.engine.state_mode(self.omega_alpha(a), 1, self.W_alpha(b)))

    def X_block(self, q: int) -> PBWState:
        """The q-slice of X^(p): 2(n+2) sum_{i<=j<q} w1^{a_i..a_j} W^{a_j+1..a_q} - sum_i (n+4i-2) W^{a_i..a_q}."""
        def build():
            n = self.n
            s = PBWState()
            for i in range(1, q):
                for j in range(i, q):
                    s = s + self.omega1W(self.root(i, j), self.root(j + 1, q))
            s = s * (2 * (n + 2))
            for i in range(1, q + 1):
                s = s - self.W_alpha(self.root(i, q)) * (n + 4 * i - 2)
            return s
        return self._cached(("Xblock", q), build)

    def X(self, p: int) -> PBWState:
        if not 0 <= p <= self.l:
            raise ValueError(f"X^(p) needs 0 <= p <= l, got {p}")

        def build():
            s = PBWState()
            for q in range(1, p + 1):
                s = s + self.X_block(q)
            return s
        return self._cached(("X", p), build)

    def W(self) -> PBWState:
        n, l = self.n, self.l
        return self._cached(("Wgen",), lambda: self.X(l - 1) * (1 / (n + l)) - self.X(l) * (1 / (n + l + 1)))

    def named(self) -> dict:
        """States under their exported names."""
        out = {"omega": self.omega(), "W": self.W()}
        for p in range(self.l + 1):
            out[f"X({p})"] = self.X(p)
        for r in self.positive_roots:
            out[f"omega_alpha[{root_name(r)}]"] = self.omega_alpha(r)
            out[f"W_alpha[{root_name(r)}]"] = self.W_alpha(r)
        return out

    # -- commutant --------------------------------------------------------------------
    def sub_generators(self) -> list:
        """(name, kind, object) for the generators whose nonnegative modes must kill coset states."""
        al = self.alg
        gens = []
        for i in range(1, self.l + 1):
            gens.append((f"h[a{i}]", "current", al.h(self.root(i, i))))
        for p in self.levi_simple:
            r = self.root(p, p)
            gens.append((f"e[a{p}]", "current", al.e(r)))
            gens.append((f"f[a{p}]", "current", al.f(r)))
        for i in range(1, self.l):
            for j in range(i, self.l):
                r = self.root(i, j)
                gens.append((f"W_alpha[{root_name(r)}]", "state", self.W_alpha(r)))
        return gens

    def commutant_membership(self, v: PBWState) -> dict:
        """Which nonnegative modes of the sub-structure generators fail to kill ``v``."""
        if not v.is_homogeneous():
            raise ValueError("commutant_membership needs a homogeneous state")
        wv = v.weight() if v else 0
        V = self.engine
        report = {}
        for name, kind, g in self.sub_generators():
            failing = []
            if kind == "current":
                for m in range(0, wv + 1):
                    if V.current_mode(g, m, v):
                        failing.append(m)
            else:
                wg = g.weight()
                for m in range(0, wv + wg):
                    if V.state_mode(g, m, v):
                        failing.append(m)
            report[name] = failing
        return {"annihilated": all(not f for f in report.values()), "failures": report}

    def invariant_pairing(self, u: PBWState, v: PBWState):
        """Vacuum coefficient of u_(2d-1) v for u, v homogeneous of weight d."""
        du = u.weight() if u else 0
        dv = v.weight() if v else 0
        if du != dv:
            raise PairingError(f"weight mismatch: {du} vs {dv}")
        r = self.engine.state_mode(u, 2 * du - 1, v)
        return r.vacuum_coefficient() if r else self.engine.scalar(0)


def weight_of(v: PBWState) -> int:
    return max(mono_weight(k) for k in v.terms) if v else 0
