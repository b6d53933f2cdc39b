"""BRST complex of the quantized Drinfeld-Sokolov "+" reduction at desk scale.

The complex is V(sl_m) (x) F where F is the Fock module of the Clifford
algebra on psi_a(n), one odd pair per root, with {psi_a(m), psi_b(n)} =
delta_{a+b,0} delta_{m+n,0}.  The vacuum is killed by psi_a(n) for a > 0,
n >= 0 and by psi_{-a}(n) for n >= 1, so the creation operators are
psi_a(n <= -1) and psi_{-a}(n <= 0).

A ghost monomial is a sorted tuple of creation keys ``(s, i, n)`` meaning
psi_{s*a_i}(n), with ``a_i`` the i-th positive root; the state is the
ordered product applied to the ghost vacuum.

Gradings:

* ``L0``: modes of a weight-1 field for psi_{a>0}, weight-0 field for
  psi_{-a}; every factor x(n) or psi(n) contributes -n.
* ``H``: principal height (e_a: +ht, f_a: -ht, psi_a: +ht, psi_{-a}: -ht).
* ``charge``: +1 per psi_{-a}, -1 per psi_{a}.

Q_st preserves L0 and H; chi = sum_i psi_{-a_i}(1) lowers both by one.
The grading preserved by Q = Q_st + chi is therefore w = L0 - H, which is
what the cohomology tables are indexed by.  Each w-slab is infinite, so
cohomology is computed on the subcomplexes F_N = {L0 <= N} and the image
of H(F_N) in H(F_{N+1}) is tracked until it stabilizes.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .affine import AffineVA, PBWState, mono_weight, pbw_basis, _add_into, _prune
from .lie import build_sl, root_name
from .linalg import nullspace_q, rank_q

__all__ = ["BRSTComplex", "ComplexState", "CriticalLevelError", "CohomologyTable",
           "cohomology_dims", "nilpotency_report"]


class CriticalLevelError(ValueError):
    pass


def _ghost_is_creation(key) -> bool:
    s, _, n = key
    return n <= -1 if s > 0 else n <= 0


def ghost_apply(key, g: tuple):
    """psi_key acting on the ghost monomial g: (sign, monomial) or None."""
    if _ghost_is_creation(key):
        pos = bisect_left(g, key)
        if pos < len(g) and g[pos] == key:
            return None
        return (-1 if pos % 2 else 1), g[:pos] + (key,) + g[pos:]
    s, i, n = key
    conj = (-s, i, -n)
    pos = bisect_left(g, conj)
    if pos == len(g) or g[pos] != conj:
        return None
    return (-1 if pos % 2 else 1), g[:pos] + g[pos + 1:]


class ComplexState:
    """Sparse combination of (PBW monomial, ghost monomial) pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            t = out.get(k)
            out[k] = v if t is None else t + v
        return ComplexState(out)

    def __neg__(self):
        return ComplexState({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return ComplexState({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, ComplexState):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None

    def __repr__(self):
        return f"ComplexState({len(self.terms)} terms)"


@dataclass(eq=False)
class BRSTComplex:
    """C_k(sl_m) = V(sl_m) (x) F with the differential Q = Q_st + chi."""

    m: int
    level: object = None
    engine: AffineVA = field(init=False)

    def __post_init__(self):
        if self.level is not None and Fraction(self.level) == -self.m:
            raise CriticalLevelError(f"k = {self.level} is the critical level -h^v for sl{self.m}")
        self.alg = build_sl(self.m)
        self.engine = AffineVA(self.alg, self.level)
        pos = self.alg.roots.positive
        self.P = len(pos)
        self.height = [sum(r) for r in pos]
        # e-basis index of a positive root equals its position in ``pos``
        self.simple = [i for i, r in enumerate(pos) if sum(r) == 1]
        self.cubic = []
        for a, b in combinations(range(self.P), 2):
            for g, c in self.alg.bracket_table[a][b].items():
                # c^g_{ab}; the -1/2 over ordered pairs is -1 over unordered ones
                self.cubic.append((a, b, g, c))
        self._qst_cache: dict = {}
        self._chi_cache: dict = {}
        self._pbw_height = {}

    # -- gradings ---------------------------------------------------------------
    def pbw_height(self, p) -> int:
        h = self._pbw_height.get(p)
        if h is None:
            cw = self.alg.cartan_weight
            h = sum(sum(cw[x]) for _, x in p)
            self._pbw_height[p] = h
        return h

    def ghost_L0(self, g) -> int:
        return -sum(n for _, _, n in g)

    def ghost_height(self, g) -> int:
        return sum(s * self.height[i] for s, i, _ in g)

    def charge_of(self, g) -> int:
        return sum(1 if s < 0 else -1 for s, _, _ in g)

    def L0(self, key) -> int:
        p, g = key
        return mono_weight(p) + self.ghost_L0(g)

    def H(self, key) -> int:
        p, g = key
        return self.pbw_height(p) + self.ghost_height(g)

    def dsweight(self, key) -> int:
        return self.L0(key) - self.H(key)

    def bigrading(self, v: ComplexState) -> set:
        return {(self.dsweight(k), self.charge_of(k[1])) for k in v.terms}

    # -- states -----------------------------------------------------------------
    def vacuum(self) -> ComplexState:
        return ComplexState({((), ()): self.engine.one})

    def ghost_key(self, root, n: int):
        """Key of psi_root(n) for a root given as a coefficient tuple."""
        pos = self.alg.roots.positive
        if root in pos:
            return (1, pos.index(root), n)
        neg = tuple(-c for c in root)
        return (-1, pos.index(neg), n)

    def state(self, pbw_factors=(), ghosts=()) -> ComplexState:
        """x1(m1).. xr(mr)|0> (x) psi_1(n1)..psi_s(ns)|0>, operators applied right to left."""
        v = self.engine.word(list(pbw_factors))
        out = ComplexState({(p, ()): c for p, c in v.terms.items()})
        for root, n in reversed(list(ghosts)):
            out = self.ghost_mode(root, n, out)
        return out

    def ghost_mode(self, root, n: int, v: ComplexState) -> ComplexState:
        """psi_root(n) v."""
        key = self.ghost_key(root, n)
        out = {}
        for (p, g), c in v.terms.items():
            r = ghost_apply(key, g)
            if r is None:
                continue
            sgn, g2 = r
            k = (p, g2)
            out[k] = out.get(k, 0) + c * sgn
        return ComplexState(out)

    def affine_mode(self, x, n: int, v: ComplexState) -> ComplexState:
        """x(n) acting on the affine factor."""
        out = ComplexState()
        for (p, g), c in v.terms.items():
            w = self.engine.current_mode(x, n, PBWState({p: c}))
            out = out + ComplexState({(q, g): d for q, d in w.terms.items()})
        return out

    # -- differential -------------------------------------------------------------
    def _qst_mono(self, key) -> dict:
        hit = self._qst_cache.get(key)
        if hit is not None:
            return hit
        p, g = key
        cm = self.engine._cm
        acc: dict = {}
        wp = mono_weight(p)
        # sum_{a>0, n} e_a(-n) psi_{-a}(n)
        for i in range(self.P):
            ns = list(range(-wp, 1))
            ns += [-n for s, j, n in g if s > 0 and j == i]
            for n in ns:
                r = ghost_apply((-1, i, n), g)
                if r is None:
                    continue
                sgn, g2 = r
                for q, c in cm(i, -n, p).items():
                    k = (q, g2)
                    t = acc.get(k)
                    acc[k] = c * sgn if t is None else t + c * sgn
        # -sum_{a<b} c^g_{ab} psi_{-a}(s) psi_{-b}(r) psi_g(m), s + r + m = 0
        if self.cubic and g:
            # at least one factor annihilates something in g; creation modes
            # are then bounded by the modes present (two annihilators can force
            # a creation mode of up to twice the largest |n|)
            top = max(abs(n) for _, _, n in g)
            for a, b, gam, c in self.cubic:
                ms = [-n for s, i, n in g if s < 0 and i == gam] + list(range(-2 * top, 0))
                for m_ in ms:
                    r1 = ghost_apply((1, gam, m_), g)
                    if r1 is None:
                        continue
                    g1 = r1[1]
                    rs = [-n for s, i, n in g1 if s > 0 and i == b] + list(range(-2 * top, 1))
                    for r_ in rs:
                        r2 = ghost_apply((-1, b, r_), g1)
                        if r2 is None:
                            continue
                        r3 = ghost_apply((-1, a, -m_ - r_), r2[1])
                        if r3 is None:
                            continue
                        k = (p, r3[1])
                        acc[k] = acc.get(k, 0) - c * r1[0] * r2[0] * r3[0]
        res = _prune(acc)
        self._qst_cache[key] = res
        return res

    def _chi_mono(self, key) -> dict:
        hit = self._chi_cache.get(key)
        if hit is not None:
            return hit
        p, g = key
        acc: dict = {}
        for i in self.simple:
            r = ghost_apply((-1, i, 1), g)
            if r is not None:
                k = (p, r[1])
                acc[k] = acc.get(k, 0) + r[0]
        res = _prune(acc)
        self._chi_cache[key] = res
        return res

    def _apply(self, v: ComplexState, parts) -> ComplexState:
        if not v:
            return ComplexState()
        den, nums = self.engine._split(v)
        acc: dict = {}
        for key, c in nums.items():
            for part in parts:
                r = part(key)
                if r:
                    _add_into(acc, r, c)
        return ComplexState(self.engine._join(acc, den).terms)

    def apply_Qst(self, v: ComplexState) -> ComplexState:
        return self._apply(v, (self._qst_mono,))

    def apply_chi(self, v: ComplexState) -> ComplexState:
        return self._apply(v, (self._chi_mono,))

    def apply_Q(self, v: ComplexState) -> ComplexState:
        return self._apply(v, (self._qst_mono, self._chi_mono))

    # -- bases --------------------------------------------------------------------
    def ghost_basis(self, d: int) -> list:
        """Ghost monomials of L0-weight exactly d."""
        keys = [(-1, i, 0) for i in range(self.P)]
        for n in range(1, d + 1):
            keys += [(1, i, -n) for i in range(self.P)] + [(-1, i, -n) for i in range(self.P)]
        keys.sort()
        out = []

        def rec(start, rest, acc):
            if rest == 0:
                out.append(tuple(acc))
            for j in range(start, len(keys)):
                wt = -keys[j][2]
                if wt > rest:
                    continue
                acc.append(keys[j])
                rec(j + 1, rest - wt, acc)
                acc.pop()
        rec(0, d, [])
        return sorted(set(out))

    def basis(self, L0: int) -> list:
        """All (PBW, ghost) monomials of L0-weight exactly ``L0``."""
        out = []
        for d1 in range(L0 + 1):
            ps = pbw_basis(self.alg.dim, d1)
            gs = self.ghost_basis(L0 - d1)
            out.extend((p, g) for p in ps for g in gs)
        return out

    def describe(self, key) -> str:
        p, g = key
        a = self.engine.mono_str(p) if p else ""
        names = []
        for s, i, n in g:
            r = self.alg.roots.positive[i]
            names.append(f"psi[{'-' if s < 0 else ''}{root_name(r)}]({n})")
        return (a + " |0> (x) " + " ".join(names) + " |0>").replace("  ", " ").strip()

    def serialize(self, v: ComplexState) -> str:
        if not v:
            return "0"
        from .scalars import RatFunc
        parts = []
        for k in sorted(v.terms, key=lambda k: (self.L0(k), k)):
            parts.append(f"{RatFunc.coerce(v.terms[k])} * {self.describe(k)}")
        return " + ".join(parts)


# -- nilpotency -----------------------------------------------------------------------

def nilpotency_report(m: int, max_weight: int = 4, level=None) -> dict:
    """Check Q_st^2 = chi^2 = Q_st chi + chi Q_st = 0 on every basis monomial of L0 <= max_weight."""
    C = BRSTComplex(m, level)
    one = C.engine.one
    counts = {"Qst^2": 0, "chi^2": 0, "{Qst,chi}": 0, "charge+1": 0}
    failures = {k: [] for k in counts}
    n_states = 0
    for d in range(max_weight + 1):
        for key in C.basis(d):
            n_states += 1
            v = ComplexState({key: one})
            q = C.apply_Qst(v)
            x = C.apply_chi(v)
            ch = C.charge_of(key[1])
            if any(C.charge_of(k[1]) != ch + 1 for k in q.terms) or \
               any(C.charge_of(k[1]) != ch + 1 for k in x.terms):
                failures["charge+1"].append(C.describe(key))
            if C.apply_Qst(q):
                failures["Qst^2"].append(C.describe(key))
            if C.apply_chi(x):
                failures["chi^2"].append(C.describe(key))
            if C.apply_chi(q) + C.apply_Qst(x):
                failures["{Qst,chi}"].append(C.describe(key))
    return {"algebra": f"sl{m}", "max_weight": max_weight, "states": n_states,
            "failures": {k: v[:10] for k, v in failures.items()},
            "failure_counts": {k: len(v) for k, v in failures.items()},
            "ok": not any(failures.values())}


# -- cohomology -------------------------------------------------------------------------

@dataclass
class CohomologyTable:
    algebra: str
    level: Fraction
    weights: list
    dims: dict            # (w, charge) -> stable dim of H
    stable: dict          # w -> bool
    history: dict         # w -> list of (N, {charge: image dim})
    euler_ok: bool

    def h0(self) -> list:
        return [self.dims.get((w, 0), 0) for w in self.weights]

    def nonzero_off_degree(self) -> dict:
        return {k: v for k, v in self.dims.items() if k[1] != 0 and v}

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "level": str(self.level),
            "H0": self.h0(),
            "dims": {f"w={w},i={i}": d for (w, i), d in sorted(self.dims.items()) if d},
            "stable": {str(w): s for w, s in sorted(self.stable.items())},
            "euler_ok": self.euler_ok,
        }


def _matrix_rows(C: BRSTComplex, cols: list, target_index: dict) -> list:
    """Rows (one per source basis vector) of Q in the target coordinates."""
    rows = []
    for key in cols:
        r = {}
        for k, c in C._qst_mono(key).items():
            r[target_index[k]] = r.get(target_index[k], 0) + c
        for k, c in C._chi_mono(key).items():
            r[target_index[k]] = r.get(target_index[k], 0) + c
        rows.append({j: Fraction(c) for j, c in r.items() if c})
    return rows


def cohomology_dims(m: int, k, max_weight: int = 4, lo: int = 0, hi: int = 3) -> CohomologyTable:
    """dim H^i of the w-slabs 0..max_weight at the rational level k.

    For each w the filtration F_N (L0 <= N) is used for N = w+lo .. w+hi;
    the reported dimension is the rank of H(F_N) -> H(F_{N+1}) at the
    largest N, and ``stable`` records whether it agreed with N - 1.
    """
    k = Fraction(k)
    C = BRSTComplex(m, k)
    top = max_weight + hi + 1
    by_L0 = {d: C.basis(d) for d in range(top + 1)}
    dims, stable, history = {}, {}, {}
    euler_ok = True
    for w in range(max_weight + 1):
        slab = [key for d in range(min(top, w + hi + 1) + 1) for key in by_L0[d] if C.dsweight(key) == w]
        charges = sorted({C.charge_of(g) for _, g in slab})
        by_charge = {i: [key for key in slab if C.charge_of(key[1]) == i] for i in charges}
        index = {i: {key: j for j, key in enumerate(by_charge[i])} for i in charges}
        rows = {i: _matrix_rows(C, by_charge[i], index[i + 1]) if i + 1 in index
                else [{} for _ in by_charge[i]] for i in charges}

        def sub(i, N):
            return [j for j, key in enumerate(by_charge.get(i, [])) if C.L0(key) <= N]

        def H_dims(N):
            out = {}
            for i in charges:
                src = sub(i, N)
                r_out = rank_q([rows[i][j] for j in src], len(index.get(i + 1, {})) or 1) if src else 0
                prev = sub(i - 1, N)
                r_in = rank_q([rows[i - 1][j] for j in prev], len(index[i]) or 1) if prev else 0
                out[i] = len(src) - r_out - r_in
            return out

        def image_dims(N, M):
            out = {}
            for i in charges:
                src = sub(i, N)
                if not src:
                    out[i] = 0
                    continue
                ncols_out = len(index.get(i + 1, {}))
                # cocycles of F_N in charge i (coordinates in the full charge-i basis)
                if ncols_out:
                    ker = nullspace_q(_transpose(
                        [rows[i][j] for j in src], ncols_out), len(src))
                else:
                    ker = [[Fraction(int(a == b)) for a in range(len(src))] for b in range(len(src))]
                Z = []
                for vec in ker:
                    Z.append({src[a]: c for a, c in enumerate(vec) if c})
                B = [rows[i - 1][j] for j in sub(i - 1, M)] if i - 1 in rows else []
                ncols = len(index[i])
                rB = rank_q(B, ncols) if B else 0
                rZB = rank_q(Z + B, ncols) if (Z or B) else 0
                out[i] = rZB - rB
            return out

        hist = []
        for N in range(max(w + lo, 0), w + hi + 1):
            hd = H_dims(N)
            if sum((-1) ** (i % 2) * len(sub(i, N)) for i in charges) != \
                    sum((-1) ** (i % 2) * d for i, d in hd.items()):
                euler_ok = False
            hist.append((N, image_dims(N, N + 1)))
        history[w] = hist
        last = hist[-1][1]
        stable[w] = len(hist) > 1 and hist[-2][1] == last
        for i, d in last.items():
            dims[(w, i)] = d
    return CohomologyTable(f"sl{m}", k, list(range(max_weight + 1)), dims, stable, history, euler_ok)


def _transpose(rows: list, ncols: int) -> list:
    cols = [dict() for _ in range(ncols)]
    for a, r in enumerate(rows):
        for j, c in r.items():
            cols[j][a] = c
    return cols
