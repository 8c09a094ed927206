"""Dense matrices of polynomials over a shared variable list."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .poly import Poly, VariableMismatch, poly


@dataclass(frozen=True)
class PolyMatrix:
    vars: tuple
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Poly

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        for row in self.entries:
            for p in row:
                if p.vars != self.vars:
                    raise VariableMismatch(f"entry over {p.vars}, matrix over {self.vars}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def build(cls, rows: Sequence[Sequence], vars: Iterable[str] = (), cols: int | None = None) -> "PolyMatrix":
        """Entries may be Poly, int, Fraction or polynomial strings."""
        vars = tuple(vars)
        grid = tuple(tuple(poly(x, vars) for x in row) for row in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(vars, len(grid), cols, grid)

    @classmethod
    def zeros(cls, rows: int, cols: int, vars: Iterable[str] = ()) -> "PolyMatrix":
        vars = tuple(vars)
        z = Poly.zero(vars)
        return cls(vars, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, vars: Iterable[str] = ()) -> "PolyMatrix":
        vars = tuple(vars)
        z, o = Poly.zero(vars), Poly.one(vars)
        return cls(vars, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[Poly], rows: int, cols: int, vars: Iterable[str] = ()) -> "PolyMatrix":
        vars = tuple(vars)
        z = Poly.zero(vars)
        grid = [[z] * cols for _ in range(rows)]
        for k, d in enumerate(diag):
            grid[k][k] = poly(d, vars)
        return cls(vars, rows, cols, tuple(tuple(r) for r in grid))

    @classmethod
    def from_constants(cls, rows: Sequence[Sequence], cols: int | None = None, vars: Iterable[str] = ()) -> "PolyMatrix":
        vars = tuple(vars)
        return cls.build([[Poly.const(Fraction(x), vars) for x in row] for row in rows], vars, cols)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], vars: Iterable[str], cols: int | None = None) -> "PolyMatrix":
        return cls.build(rows, vars, cols)

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_lists(self) -> list:
        return [list(r) for r in self.entries]

    def to_strings(self) -> list:
        return [[str(p) for p in row] for row in self.entries]

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def is_constant(self) -> bool:
        return all(p.is_constant() for row in self.entries for p in row)

    def to_fractions(self) -> list:
        """Constant entries as Fractions (raises if an entry is not constant)."""
        return [[p.constant_value() for p in row] for row in self.entries]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    # -- algebra ------------------------------------------------------------

    def _check(self, other: "PolyMatrix"):
        if other.vars != self.vars:
            raise VariableMismatch(f"matrix over {self.vars} vs {other.vars}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        grid = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries))
        return PolyMatrix(self.vars, self.rows, self.cols, grid)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda p: p * c)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = Poly.zero(self.vars)
        grid = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            grid.append(tuple(row))
        return PolyMatrix(self.vars, self.rows, other.cols, tuple(grid))

    def transpose(self) -> "PolyMatrix":
        grid = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return PolyMatrix(self.vars, self.cols, self.rows, grid)

    def map(self, fn: Callable[[Poly], Poly], vars: Iterable[str] | None = None) -> "PolyMatrix":
        vars = self.vars if vars is None else tuple(vars)
        grid = tuple(tuple(fn(p) for p in row) for row in self.entries)
        return PolyMatrix(vars, self.rows, self.cols, grid)

    def substitute(self, images: Mapping[str, Poly], target_vars: Iterable[str]) -> "PolyMatrix":
        target_vars = tuple(target_vars)
        return self.map(lambda p: p.substitute(images, target_vars), target_vars)

    def embed(self, target_vars: Iterable[str]) -> "PolyMatrix":
        target_vars = tuple(target_vars)
        return self.map(lambda p: p.embed(target_vars), target_vars)

    def hstack(self, *others: "PolyMatrix") -> "PolyMatrix":
        cols = self.cols
        grid = [list(r) for r in self.entries]
        for o in others:
            self._check(o)
            if o.rows != self.rows:
                raise ValueError("hstack needs equal row counts")
            for i in range(self.rows):
                grid[i].extend(o.entries[i])
            cols += o.cols
        return PolyMatrix(self.vars, self.rows, cols, tuple(tuple(r) for r in grid))

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        z = Poly.zero(self.vars)
        rows, cols = self.rows * other.rows, self.cols * other.cols
        grid = [[z] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i][j]
                if a:
                    for k in range(other.rows):
                        for l in range(other.cols):
                            b = other.entries[k][l]
                            if b:
                                grid[i * other.rows + k][j * other.cols + l] = a * b
        return PolyMatrix(self.vars, rows, cols, tuple(tuple(r) for r in grid))

    @staticmethod
    def block_diag(blocks: Sequence["PolyMatrix"], vars: Iterable[str] | None = None) -> "PolyMatrix":
        if vars is None:
            vars = blocks[0].vars
        vars = tuple(vars)
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = Poly.zero(vars)
        grid = [[z] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            if b.vars != vars:
                raise VariableMismatch(f"block over {b.vars}, expected {vars}")
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return PolyMatrix(vars, rows, cols, tuple(tuple(r) for r in grid))

    def determinant(self) -> Poly:
        """Determinant via fraction-free (Bareiss) elimination; <= 1 variable."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if len(self.vars) > 1:
            raise ValueError("determinant implemented for at most one variable")
        n = self.rows
        if n == 0:
            return Poly.one(self.vars)
        a = [list(r) for r in self.entries]
        sign = 1
        prev = Poly.one(self.vars)
        for k in range(n - 1):
            if a[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return Poly.zero(self.vars)
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                    q, r = divmod(num, prev)
                    assert r.is_zero(), "Bareiss division must be exact"
                    a[i][j] = q
            prev = a[k][k]
        return a[n - 1][n - 1] * sign

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.entries) + "]"
