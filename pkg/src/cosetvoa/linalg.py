"""Exact linear algebra on states: spans, ranks and kernels.

Over Q the heavy lifting is done by ``flint.fmpz_mat`` after clearing
denominators.  Over Q(n) (tiny systems only) a plain Gaussian elimination
on :class:`RatFunc` entries is used.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from flint import fmpz_mat

from .affine import PBWState

__all__ = ["coordinates", "rank_q", "nullspace_q", "solve_in_span", "row_reduce"]


def coordinates(states: list[PBWState], index: dict | None = None):
    """Coefficient rows of ``states`` over a shared monomial index."""
    if index is None:
        index = {}
        for s in states:
            for k in s.terms:
                if k not in index:
                    index[k] = len(index)
    rows = []
    for s in states:
        row = {}
        for k, c in s.terms.items():
            row[index[k]] = c
        rows.append(row)
    return rows, index


def _to_fmpz(rows: list[dict], ncols: int) -> fmpz_mat:
    """Integer matrix with the same row space (each row scaled by its denominator lcm)."""
    data = []
    for row in rows:
        L = 1
        for c in row.values():
            L = lcm(L, Fraction(c).denominator)
        dense = [0] * ncols
        for j, c in row.items():
            dense[j] = int(Fraction(c) * L)
        data.extend(dense)
    return fmpz_mat(len(rows), ncols, data)


def rank_q(rows: list[dict], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return _to_fmpz(rows, ncols).rank()


def nullspace_q(rows: list[dict], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} for the matrix whose rows are given."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    M = _to_fmpz(rows, ncols)
    X, nullity = M.nullspace()
    out = []
    for j in range(nullity):
        out.append([Fraction(int(X[i, j])) for i in range(ncols)])
    return out


def row_reduce(rows: list[list], zero=0) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over any exact field; returns (rows, pivot columns)."""
    R = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(R[0]) if R else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def solve_in_span(basis: list[PBWState], target: PBWState):
    """Coefficients c with sum c_i basis_i == target, or None if target is outside the span."""
    if not target:
        return [0] * len(basis)
    if not basis:
        return None
    rows, index = coordinates(basis + [target])
    ncols = len(index)
    zero = next(iter(target.terms.values())) * 0
    # augmented system: columns = basis vectors, rows = monomials
    A = [[rows[i].get(j, zero) for i in range(len(basis))] + [rows[-1].get(j, zero)]
         for j in range(ncols)]
    R, pivots = row_reduce(A)
    if len(basis) in pivots:
        return None
    sol = [zero] * len(basis)
    for row, c in zip(R, pivots):
        sol[c] = row[-1]
    return sol
