"""Smith normal form over the Euclidean domains Q and Q[t]."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .matrix import PolyMatrix
from .poly import Poly


class NoSmithForm(ValueError):
    """The coefficient ring has two or more variables (not a PID)."""


@dataclass(frozen=True)
class SnfResult:
    """``left @ A @ right`` equals the diagonal of ``diag`` padded with zeros.

    ``diag`` has ``min(rows, cols)`` entries: the monic invariant factors
    followed by ``rank_deficiency`` zeros.
    """

    left: PolyMatrix | None
    diag: tuple
    right: PolyMatrix | None
    rank_deficiency: int

    @property
    def factors(self) -> tuple:
        return tuple(d for d in self.diag if not d.is_zero())

    def diagonal_matrix(self, rows: int, cols: int) -> PolyMatrix:
        vars = self.diag[0].vars if self.diag else ()
        return PolyMatrix.diagonal(self.diag, rows, cols, vars)


def _pivot(a, k, m, n):
    best = None
    for i in range(k, m):
        row = a[i]
        for j in range(k, n):
            p = row[j]
            if p.terms:
                d = p.degree()
                if best is None or d < best[0]:
                    best = (d, i, j)
                    if d == 0:
                        return best
    return best


def smith_normal_form(A: PolyMatrix, transforms: bool = True) -> SnfResult:
    """Diagonalize ``A`` by unimodular row and column operations.

    The pivot at each stage is the lowest-degree nonzero entry of the
    remaining block (ties: smallest row, then column), which keeps degree
    growth in check and makes the transforms reproducible.
    """
    if len(A.vars) > 1:
        raise NoSmithForm(f"no Smith normal form over Q[{', '.join(A.vars)}]")
    vars = A.vars
    m, n = A.rows, A.cols
    a = [list(r) for r in A.entries]
    L = [list(r) for r in PolyMatrix.identity(m, vars).entries] if transforms else None
    R = [list(r) for r in PolyMatrix.identity(n, vars).entries] if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if L is not None:
            L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if R is not None:
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y if y.terms else x for x, y in zip(a[dst], a[src])]
        if L is not None:
            L[dst] = [x + q * y if y.terms else x for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in a:
            if row[src].terms:
                row[dst] = row[dst] + q * row[src]
        if R is not None:
            for row in R:
                if row[src].terms:
                    row[dst] = row[dst] + q * row[src]

    size = min(m, n)
    rank = 0
    for k in range(size):
        while True:
            piv = _pivot(a, k, m, n)
            if piv is None:
                break
            _, i, j = piv
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            p = a[k][k]
            clean = True
            for i in range(k + 1, m):
                if a[i][k].terms:
                    q, r = divmod(a[i][k], p)
                    add_row(i, k, -q)
                    if r.terms:
                        clean = False
            if not clean:
                continue
            for j in range(k + 1, n):
                if a[k][j].terms:
                    q, r = divmod(a[k][j], p)
                    add_col(j, k, -q)
                    if r.terms:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if a[i][j].terms and not p.divides(a[i][j])),
                None,
            )
            if bad is not None:
                add_row(k, bad, Poly.one(vars))
                continue
            break
        if piv is None:
            break
        lc = a[k][k].leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            a[k] = [x * inv for x in a[k]]
            if L is not None:
                L[k] = [x * inv for x in L[k]]
        rank += 1

    diag = tuple(a[k][k] for k in range(size))
    left = PolyMatrix(vars, m, m, tuple(tuple(r) for r in L)) if L is not None else None
    right = PolyMatrix(vars, n, n, tuple(tuple(r) for r in R)) if R is not None else None
    return SnfResult(left, diag, right, size - rank)


def invariant_factors(A: PolyMatrix) -> tuple:
    """Monic nonzero invariant factors of ``A`` (units included)."""
    return smith_normal_form(A, transforms=False).factors


def kernel_basis(A: PolyMatrix) -> list:
    """Null-space basis of a constant matrix, as tuples of Fractions."""
    if not A.is_constant():
        raise ValueError("kernel_basis needs constant entries")
    return [tuple(v) for v in linalg.nullspace(A.to_fractions(), A.cols)]


def in_column_span(A: PolyMatrix, v: list) -> bool:
    """Is the vector ``v`` (list of Poly) an R-combination of A's columns?

    Uses ``L A R = D``: ``v = A x`` is solvable iff each entry of ``L v``
    is divisible by the matching diagonal entry (and vanishes past it).
    """
    res = smith_normal_form(A)
    lv = [sum((res.left[i, k] * v[k] for k in range(A.rows)), Poly.zero(A.vars)) for i in range(A.rows)]
    for i in range(A.rows):
        d = res.diag[i] if i < len(res.diag) else Poly.zero(A.vars)
        if not d.divides(lv[i]):
            return False
    return True
