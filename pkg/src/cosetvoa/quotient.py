"""Simple quotients L(sl_m, k) at positive integer level, commutant dimensions, generation.

At positive integer level k the maximal ideal of the vacuum module is
generated by the singular vector e_theta(-1)^{k+1}|0>.  The ideal is
U(g_<0) M with M = U(g)v the finite g-module through v, so per weight

    I_d = M (if d = k+1)  +  sum_{m>=1} x(-m) I_{d-m}.

Each I_d is kept in reduced row echelon form over the PBW monomials of
weight d; the non-pivot monomials are the basis of the quotient and
reduction modulo I_d is one pass over the pivot rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from flint import fmpq, fmpq_mat

from .affine import AffineVA, PBWState, pbw_basis
from .lie import build_sl

__all__ = ["GradedBasis", "ResourceLimitError", "simple_quotient", "coset_dims", "CosetDims",
           "parafermion_oracle", "lattice_oracle_sl2_level1", "generation_check", "qseries",
           "partitions_min_part"]

DEFAULT_MONOMIAL_BUDGET = 60_000


class ResourceLimitError(RuntimeError):
    pass


def _rref(rows: list[dict], ncols: int) -> list[dict]:
    """Nonzero RREF rows (dict col -> Fraction) of the span of ``rows``."""
    rows = [r for r in rows if r]
    if not rows:
        return []
    data = []
    for r in rows:
        dense = [0] * ncols
        for j, c in r.items():
            c = Fraction(c)
            dense[j] = fmpq(c.numerator, c.denominator)
        data.extend(dense)
    R, rank = fmpq_mat(len(rows), ncols, data).rref()
    out = []
    for i in range(rank):
        row = {}
        for j in range(ncols):
            c = R[i, j]
            if c != 0:
                row[j] = Fraction(int(c.p), int(c.q))
        out.append(row)
    return out


@dataclass(eq=False)
class Slab:
    monomials: list           # column order
    index: dict               # monomial -> column
    rows: list                # RREF rows of the ideal (dict col -> Fraction)
    pivots: list
    basis: list               # quotient basis: columns that are not pivots

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(eq=False)
class GradedBasis:
    """L(sl_m, level) up to ``max_weight`` as a quotient of the vacuum module."""

    m: int
    level: int
    max_weight: int
    engine: AffineVA
    slabs: list = field(default_factory=list)
    singular: PBWState | None = None

    def dims(self) -> list:
        return [s.dim for s in self.slabs]

    def ideal_dims(self) -> list:
        return [len(s.rows) for s in self.slabs]

    def vector(self, v: PBWState, d: int) -> dict:
        s = self.slabs[d]
        out = {}
        for k, c in v.terms.items():
            out[s.index[k]] = Fraction(c)
        return out

    def reduce_vector(self, vec: dict, d: int) -> dict:
        s = self.slabs[d]
        vec = dict(vec)
        for piv, row in zip(s.pivots, s.rows):
            c = vec.get(piv)
            if c:
                for j, a in row.items():
                    t = vec.get(j, 0) - c * a
                    if t:
                        vec[j] = t
                    else:
                        vec.pop(j, None)
        return vec

    def reduce(self, v: PBWState) -> PBWState:
        """Representative of v modulo the ideal, supported on basis monomials (v homogeneous)."""
        if not v:
            return PBWState()
        d = v.weight()
        if d > self.max_weight:
            raise ValueError(f"weight {d} beyond max_weight {self.max_weight}")
        vec = self.reduce_vector(self.vector(v, d), d)
        mons = self.slabs[d].monomials
        return PBWState({mons[j]: self.engine.scalar(c) for j, c in vec.items()})

    def coords(self, v: PBWState, d: int) -> list:
        """Coordinates of the image of v in the quotient basis of weight d."""
        s = self.slabs[d]
        vec = self.reduce_vector(self.vector(v, d), d) if v else {}
        return [vec.get(j, Fraction(0)) for j in s.basis]

    def in_ideal(self, v: PBWState) -> bool:
        return not self.reduce(v)

    def basis_states(self, d: int) -> list:
        s = self.slabs[d]
        return [PBWState({s.monomials[j]: self.engine.one}) for j in s.basis]

    def charge(self, mono) -> tuple:
        cw = self.engine.alg.cartan_weight
        rank = self.engine.alg.rank
        out = [0] * rank
        for _, x in mono:
            for i, c in enumerate(cw[x]):
                out[i] += c
        return tuple(out)

    def charge_dims(self, d: int) -> dict:
        s = self.slabs[d]
        out: dict = {}
        for j in s.basis:
            q = self.charge(s.monomials[j])
            out[q] = out.get(q, 0) + 1
        return out


def simple_quotient(m: int, level: int, max_weight: int = 6, engine: AffineVA | None = None,
                    budget: int = DEFAULT_MONOMIAL_BUDGET) -> GradedBasis:
    if int(level) != level or level < 1:
        raise ValueError("simple_quotient needs a positive integer level")
    level = int(level)
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    alg = engine.alg if engine is not None else build_sl(m)
    if alg.m != m:
        raise ValueError("engine algebra does not match m")
    total = 0
    mons_by_d = []
    for d in range(max_weight + 1):
        mons = pbw_basis(alg.dim, d)
        total += len(mons)
        if total > budget:
            raise ResourceLimitError(
                f"vacuum module of sl{m} up to weight {max_weight} exceeds {budget} monomials")
        mons_by_d.append(mons)
    V = engine if engine is not None else AffineVA(alg, level)
    if V.symbolic or V.n != level:
        raise ValueError("engine level does not match")
    theta = alg.roots.highest
    v = V.word([(alg.e(theta), -1)] * (level + 1))
    Q = GradedBasis(m, level, max_weight, V, singular=v)

    # g-module through the singular vector: close under f_{a_i}(0)
    simple_f = [alg.f(tuple(int(k == i) for k in range(alg.rank))) for i in range(alg.rank)]
    module = []
    if level + 1 <= max_weight:
        d0 = level + 1
        mons = mons_by_d[d0]
        index = {k: j for j, k in enumerate(mons)}
        span = []
        frontier = [v]
        while frontier:
            w = frontier.pop()
            cand = span + [{index[k]: Fraction(c) for k, c in w.terms.items()}]
            if len(_rref(cand, len(mons))) > len(span):
                span.append(cand[-1])
                module.append(w)
                frontier.extend(V.current_mode(f, 0, w) for f in simple_f)
                frontier = [x for x in frontier if x]

    for d in range(max_weight + 1):
        mons = mons_by_d[d]
        # descending order puts pivots on the "largest" monomials
        cols = sorted(mons, reverse=True)
        index = {k: j for j, k in enumerate(cols)}
        gens = []
        if d == level + 1:
            gens.extend(module)
        for k in range(1, d + 1):
            lower = Q.slabs[d - k]
            if not lower.rows:
                continue
            for row in lower.rows:
                b = PBWState({lower.monomials[j]: V.scalar(c) for j, c in row.items()})
                for x in range(alg.dim):
                    gens.append(V.current_mode(x, -k, b))
        rows = _rref([{index[k]: Fraction(c) for k, c in g.terms.items()} for g in gens], len(cols))
        pivots = [min(r) for r in rows]
        piv = set(pivots)
        Q.slabs.append(Slab(cols, index, rows, pivots, [j for j in range(len(cols)) if j not in piv]))
    return Q


# -- commutants --------------------------------------------------------------------

@dataclass
class CosetDims:
    m: int
    level: int
    sub: str
    dims: list
    kernels: list             # per weight: list of coordinate vectors in the quotient basis

    def as_dict(self) -> dict:
        return {"m": self.m, "level": self.level, "sub": self.sub, "dims": self.dims,
                "qseries": qseries(self.dims)}


def sub_generators(alg, sub: str) -> list:
    """Lie elements whose nonnegative modes define the commutant."""
    hs = [alg.basis(i) for i in alg.h_index]
    if sub == "heisenberg-full-cartan":
        return hs
    if sub == "levi":
        gens = list(hs)
        for p in range(1, alg.rank):
            r = tuple(int(k == p - 1) for k in range(alg.rank))
            gens += [alg.e(r), alg.f(r)]
        return gens
    raise ValueError(f"unknown subalgebra {sub!r} (heisenberg-full-cartan | levi)")


def coset_dims(m: int, level: int, sub: str = "heisenberg-full-cartan", max_weight: int = 6,
               quotient: GradedBasis | None = None, order=None) -> CosetDims:
    """dim of {v in L_d : x(j) v = 0 in L for all sub-generators x, j >= 0} per weight."""
    Q = quotient or simple_quotient(m, level, max_weight)
    V = Q.engine
    gens = sub_generators(V.alg, sub)
    dims, kernels = [], []
    for d in range(max_weight + 1):
        constraints = [(g, j) for g in range(len(gens)) for j in range(0, d + 1)]
        if order is not None:
            constraints = order(constraints)
        basis = Q.basis_states(d)
        # one column per basis vector, one row per (constraint, target coordinate)
        cols = []
        for b in basis:
            col = []
            for g, j in constraints:
                col.extend(Q.coords(V.current_mode(gens[g], j, b), d - j))
            cols.append(col)
        nrows = len(cols[0]) if cols else 0
        rows = [{i: cols[i][r] for i in range(len(cols)) if cols[i][r]} for r in range(nrows)]
        from .linalg import nullspace_q
        ker = nullspace_q(rows, len(basis))
        dims.append(len(ker))
        kernels.append(ker)
    return CosetDims(m, level, sub, dims, kernels)


def parafermion_oracle(m: int, level: int, max_weight: int = 6, quotient: GradedBasis | None = None) -> list:
    """Cartan-commutant dims from string functions: charge-0 character of L times prod (1-q^n)^rank."""
    Q = quotient or simple_quotient(m, level, max_weight)
    zero = tuple(0 for _ in range(Q.engine.alg.rank))
    c0 = [Q.charge_dims(d).get(zero, 0) for d in range(max_weight + 1)]
    eta = [1] + [0] * max_weight
    for n in range(1, max_weight + 1):
        for _ in range(Q.engine.alg.rank):
            new = eta[:]
            for d in range(n, max_weight + 1):
                new[d] -= eta[d - n]
            eta = new
    return [sum(c0[i] * eta[d - i] for i in range(d + 1)) for d in range(max_weight + 1)]


def _partitions(n: int, min_part: int = 1) -> int:
    # p(n) with parts >= min_part, by the usual coin-change table
    table = [1] + [0] * n
    for part in range(min_part, n + 1):
        for t in range(part, n + 1):
            table[t] += table[t - part]
    return table[n]


def partitions_min_part(max_weight: int, min_part: int) -> list:
    return [_partitions(d, min_part) for d in range(max_weight + 1)]


def lattice_oracle_sl2_level1(max_weight: int) -> list:
    """Graded dims of the A1 lattice vertex algebra: sum over lattice points m of p(d - m^2)."""
    out = []
    for d in range(max_weight + 1):
        tot = 0
        m = 0
        while m * m <= d:
            tot += _partitions(d - m * m) * (1 if m == 0 else 2)
            m += 1
        out.append(tot)
    return out


def qseries(dims: list) -> str:
    parts = []
    for d, c in enumerate(dims):
        if not c:
            continue
        mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


# -- generation -------------------------------------------------------------------------

@dataclass
class GenerationReport:
    level: int
    max_weight: int
    generated: list
    kernel: list
    contained: list          # per weight: generated subspace lies in the coset kernel
    omega_spans_weight2: bool
    W_in_weight3: bool
    W_nonzero: bool

    @property
    def equal(self) -> list:
        return [g == k and c for g, k, c in zip(self.generated, self.kernel, self.contained)]

    @property
    def ok(self) -> bool:
        return all(self.equal)

    def as_dict(self) -> dict:
        return {"level": self.level, "max_weight": self.max_weight,
                "generated_dims": self.generated, "coset_dims": self.kernel,
                "contained": self.contained, "equal": self.equal,
                "omega_spans_weight2": self.omega_spans_weight2,
                "W_in_weight3": self.W_in_weight3, "W_nonzero": self.W_nonzero, "ok": self.ok}


def generation_check(m: int = 2, level: int = 3, max_weight: int = 6) -> GenerationReport:
    """Span of all modes of omega and W applied to |0> versus the Cartan commutant, per weight."""
    if m != 2:
        raise ValueError("generation_check is implemented for the l = 1 instance (m = 2)")
    from .coset import CosetContext
    ctx = CosetContext(1, level=level)
    Q = simple_quotient(2, level, max_weight, engine=ctx.engine)
    V = ctx.engine
    gens = [(ctx.omega(), 2), (ctx.W(), 3)]
    span: list[list] = [[] for _ in range(max_weight + 1)]      # RREF rows of coordinate vectors
    reps: list[list] = [[] for _ in range(max_weight + 1)]

    def add(state: PBWState, d: int) -> bool:
        vec = Q.coords(state, d)
        if not any(vec):
            return False
        new = _rref(span[d] + [{j: c for j, c in enumerate(vec) if c}], len(vec))
        if len(new) > len(span[d]):
            span[d] = new
            reps[d].append(Q.reduce(state))
            return True
        return False

    queue = []
    if add(V.vacuum(), 0):
        queue.append((V.vacuum(), 0))
    while queue:
        v, dv = queue.pop(0)
        for u, du in gens:
            for d in range(0, max_weight + 1):
                j = du + dv - d - 1
                w = V.state_mode(u, j, v)
                if w and add(w, d):
                    queue.append((Q.reduce(w), d))
    generated = [len(s) for s in span]
    K = coset_dims(2, level, "heisenberg-full-cartan", max_weight, quotient=Q)
    contained = []
    for d in range(max_weight + 1):
        if not span[d]:
            contained.append(True)
            continue
        kr = _rref([{j: c for j, c in enumerate(vec) if c} for vec in K.kernels[d]], Q.slabs[d].dim)
        contained.append(len(_rref(kr + span[d], Q.slabs[d].dim)) == len(kr))
    om = Q.coords(ctx.omega(), 2) if max_weight >= 2 else []
    Wc = Q.coords(ctx.W(), 3) if max_weight >= 3 else []
    w2 = max_weight >= 2 and any(om) and generated[2] == 1
    w3 = max_weight >= 3 and bool(span[3]) and \
        len(_rref(span[3] + [{j: c for j, c in enumerate(Wc) if c}], len(Wc))) == len(span[3])
    return GenerationReport(level, max_weight, generated, K.dims, contained, bool(w2), bool(w3),
                            any(Wc))
