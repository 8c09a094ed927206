"""Dense exact linear algebra over Q on lists of lists of Fractions.

Matrices are plain ``list[list[Fraction]]`` with shape ``rows x cols``.  A
matrix with zero rows carries its column count separately where needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner``/``cols`` disambiguate empty operands."""
    if inner is None:
        inner = len(b) if b else (len(a[0]) if a else 0)
    if cols is None:
        cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        orow[j] += x * y
    return out


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    if cols is None:
        cols = len(a[0]) if a else 0
    return [[a[i][j] for i in range(len(a))] for j in range(cols)]


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if x:
                for k in range(rb):
                    for l in range(cb):
                        out[i * rb + k][j * cb + l] = x * b[k][l]
    return out


def rref(a: Matrix, cols: int | None = None) -> tuple:
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    if cols is None:
        cols = len(a[0]) if a else 0
    r = [list(row) for row in a]
    pivots = []
    row = 0
    for col in range(cols):
        piv = next((i for i in range(row, len(r)) if r[i][col]), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = 1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(len(r)):
            if i != row and r[i][col]:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == len(r):
            break
    return r, pivots


def rank(a: Matrix, cols: int | None = None) -> int:
    return len(rref(a, cols)[1])


def nullspace(a: Matrix, cols: int | None = None) -> list:
    """Basis of ``{x : a x = 0}``; each vector's first nonzero entry is 1."""
    if cols is None:
        cols = len(a[0]) if a else 0
    r, pivots = rref(a, cols)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        lead = next(x for x in v if x)
        basis.append([x / lead for x in v])
    return basis


def solve(a: Matrix, b: Sequence, cols: int | None = None):
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    if cols is None:
        cols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug, cols + 1)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = r[i][cols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    r, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def column_basis(a: Matrix, cols: int | None = None) -> list:
    """Indices of a maximal independent set of columns."""
    return rref(a, cols)[1]


def cokernel(a: Matrix, rows: int, cols: int | None = None) -> tuple:
    """Cokernel of ``a: Q^cols -> Q^rows``.

    Returns ``(q, section)`` where ``q`` (k x rows) is a surjection onto the
    cokernel ``Q^k`` with kernel exactly ``im(a)`` and ``section`` (rows x k)
    satisfies ``q @ section = I``.
    """
    if cols is None:
        cols = len(a[0]) if a else 0
    if rows == 0:
        return [], []
    basis = [[a[i][j] for i in range(rows)] for j in rref(a, cols)[1]]
    # extend by standard vectors to a basis of Q^rows
    extra = []
    current = [list(v) for v in basis]
    for i in range(rows):
        e = [Fraction(0)] * rows
        e[i] = Fraction(1)
        trial = current + [e]
        if rank(transpose(trial, rows), len(trial)) == len(trial):
            current.append(e)
            extra.append(e)
        if len(current) == rows:
            break
    p = transpose(current, rows)  # columns: image basis, then complement
    pinv = inverse(p)
    q = pinv[len(basis):]
    section = transpose(extra, rows) if extra else [[] for _ in range(rows)]
    return q, section


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)
