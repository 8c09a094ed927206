"""Bounded chain complexes of finite-dimensional Q-vector spaces.

Indexing is homological: ``d_n : C_n -> C_{n-1}``.  The mapping cone of
``f : A -> B`` has ``Cone_n = A_{n-1} (+) B_n`` with
``d(a, b) = (-d_A a, f a + d_B b)``, so the connecting map of the long
exact sequence carries no sign.

Derived evaluation at ``alpha`` of an endomorphism pair ``(M, T)`` is the
cone of ``T - alpha`` on the complex concentrated in degree 0: ``H_0`` is
the underived evaluation ``coker(T - alpha)`` and ``H_1 = ker(T - alpha)``
is the Tor correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .modcat import EndoPair
from .polyalg import linalg


class InvalidComplex(ValueError):
    pass


def _frac_matrix(m, rows: int, cols: int) -> tuple:
    out = tuple(tuple(Fraction(x) for x in row) for row in m)
    if len(out) != rows or any(len(r) != cols for r in out):
        raise InvalidComplex(f"matrix shape does not match {rows}x{cols}")
    return out


@dataclass(frozen=True)
class ChainComplex:
    """Spaces ``Q^dims[k]`` in degree ``min_degree + k``.

    ``differentials[k]`` is ``d`` from degree ``min_degree + k + 1`` to
    ``min_degree + k`` (shape ``dims[k] x dims[k+1]``).
    """

    min_degree: int
    dims: tuple
    differentials: tuple

    def __post_init__(self):
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise InvalidComplex("need one differential per adjacent pair of degrees")
        ds = tuple(
            _frac_matrix(d, self.dims[k], self.dims[k + 1]) for k, d in enumerate(self.differentials)
        )
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "differentials", ds)
        for k in range(len(ds) - 1):
            # d_{n} d_{n+1} with n = min_degree + k + 1
            prod = linalg.matmul([list(r) for r in ds[k]], [list(r) for r in ds[k + 1]], self.dims[k + 1], self.dims[k + 2])
            if not linalg.is_zero(prod):
                raise InvalidComplex(f"d o d != 0 at degree {self.min_degree + k + 2}")

    @classmethod
    def zero(cls) -> "ChainComplex":
        return cls(0, (), ())

    @classmethod
    def concentrated(cls, dim: int, degree: int = 0) -> "ChainComplex":
        return cls(degree, (dim,), ())

    @classmethod
    def build(cls, min_degree: int, dims: Sequence[int], differentials: Sequence) -> "ChainComplex":
        return cls(min_degree, tuple(dims), tuple(differentials))

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.dims) - 1

    def dim(self, n: int) -> int:
        k = n - self.min_degree
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, n: int) -> list:
        """Matrix of ``d_n : C_n -> C_{n-1}`` (zero outside the range)."""
        k = n - 1 - self.min_degree
        if 0 <= k < len(self.differentials):
            return [list(r) for r in self.differentials[k]]
        return linalg.zeros(self.dim(n - 1), self.dim(n))

    def degrees(self) -> range:
        return range(self.min_degree, self.max_degree + 1)

    def to_json(self) -> dict:
        return {
            "minDegree": self.min_degree,
            "dims": list(self.dims),
            "differentials": [[[str(x) for x in r] for r in d] for d in self.differentials],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ChainComplex":
        diffs = [[[Fraction(x) for x in r] for r in d] for d in data["differentials"]]
        return cls(int(data["minDegree"]), tuple(data["dims"]), tuple(diffs))


def _rank(m: list, cols: int) -> int:
    return linalg.rank(m, cols) if m and cols else 0


def homology(C: ChainComplex, n: int) -> int:
    """``dim ker d_n - rank d_{n+1}``."""
    dn = C.dim(n)
    return dn - _rank(C.d(n), dn) - _rank(C.d(n + 1), C.dim(n + 1))


def homology_dims(C: ChainComplex) -> dict:
    return {n: homology(C, n) for n in C.degrees()}


def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** (n % 2) * C.dim(n) for n in C.degrees())


def is_acyclic(C: ChainComplex) -> bool:
    return all(homology(C, n) == 0 for n in C.degrees())


def _span(*cs: ChainComplex) -> tuple:
    live = [c for c in cs if c.dims]
    if not live:
        return 0, -1
    return min(c.min_degree for c in live), max(c.max_degree for c in live)


def _restrict(C: ChainComplex, lo: int, hi: int) -> ChainComplex:
    if hi < lo:
        return ChainComplex.zero()
    dims = tuple(C.dim(n) for n in range(lo, hi + 1))
    diffs = tuple(C.d(n) for n in range(lo + 1, hi + 1))
    return ChainComplex(lo, dims, diffs)


def direct_sum(*cs: ChainComplex) -> ChainComplex:
    lo, hi = _span(*cs)
    if hi < lo:
        return ChainComplex.zero()
    dims = tuple(sum(c.dim(n) for c in cs) for n in range(lo, hi + 1))
    diffs = []
    for n in range(lo + 1, hi + 1):
        m = linalg.zeros(sum(c.dim(n - 1) for c in cs), sum(c.dim(n) for c in cs))
        r0 = c0 = 0
        for c in cs:
            dn = c.d(n)
            for i in range(c.dim(n - 1)):
                for j in range(c.dim(n)):
                    m[r0 + i][c0 + j] = dn[i][j]
            r0 += c.dim(n - 1)
            c0 += c.dim(n)
        diffs.append(m)
    return ChainComplex(lo, dims, tuple(diffs))


@dataclass(frozen=True)
class ComplexMap:
    """Degreewise matrices ``f_n : A_n -> B_n`` commuting with the differentials."""

    source: ChainComplex
    target: ChainComplex
    components: tuple  # tuple of (degree, matrix) pairs

    def __post_init__(self):
        comps = dict(self.components)
        for n, m in comps.items():
            _frac_matrix(m, self.target.dim(n), self.source.dim(n))
        lo, hi = _span(self.source, self.target)
        for n in range(lo, hi + 2):
            # f_{n-1} d_n == d_n f_n
            left = linalg.matmul(self.at(n - 1), self.source.d(n), self.source.dim(n - 1), self.source.dim(n))
            right = linalg.matmul(self.target.d(n), self.at(n), self.target.dim(n), self.source.dim(n))
            if left != right:
                raise InvalidComplex(f"map does not commute with differentials at degree {n}")

    @classmethod
    def build(cls, source: ChainComplex, target: ChainComplex, components: Mapping[int, Sequence]) -> "ComplexMap":
        comps = tuple(sorted((n, tuple(tuple(Fraction(x) for x in r) for r in m)) for n, m in components.items()))
        return cls(source, target, comps)

    @classmethod
    def identity(cls, C: ChainComplex) -> "ComplexMap":
        return cls.build(C, C, {n: linalg.identity(C.dim(n)) for n in C.degrees()})

    @classmethod
    def zero(cls, A: ChainComplex, B: ChainComplex) -> "ComplexMap":
        return cls.build(A, B, {})

    def at(self, n: int) -> list:
        for k, m in self.components:
            if k == n:
                return [list(r) for r in m]
        return linalg.zeros(self.target.dim(n), self.source.dim(n))


def cone(f: ComplexMap) -> ChainComplex:
    """Mapping cone: ``Cone_n = A_{n-1} (+) B_n``, ``d(a, b) = (-d_A a, f a + d_B b)``."""
    A, B = f.source, f.target
    shifted = ChainComplex.zero() if not A.dims else ChainComplex(A.min_degree + 1, A.dims, A.differentials)
    lo, hi = _span(shifted, B)
    if hi < lo:
        return ChainComplex.zero()
    dims = tuple(A.dim(n - 1) + B.dim(n) for n in range(lo, hi + 1))
    diffs = []
    for n in range(lo + 1, hi + 1):
        a_src, b_src = A.dim(n - 1), B.dim(n)
        a_tgt, b_tgt = A.dim(n - 2), B.dim(n - 1)
        m = linalg.zeros(a_tgt + b_tgt, a_src + b_src)
        dA, dB, fn = A.d(n - 1), B.d(n), f.at(n - 1)
        for i in range(a_tgt):
            for j in range(a_src):
                m[i][j] = -dA[i][j]
        for i in range(b_tgt):
            for j in range(a_src):
                m[a_tgt + i][j] = fn[i][j]
            for j in range(b_src):
                m[a_tgt + i][a_src + j] = dB[i][j]
        diffs.append(m)
    return ChainComplex(lo, dims, tuple(diffs))


def endo_map(m: EndoPair, alpha=0) -> ComplexMap:
    """``T - alpha`` as a self-map of ``M`` concentrated in degree 0."""
    C = ChainComplex.concentrated(m.dim)
    a = Fraction(alpha)
    mat = [[m.endo[i][j] - (a if i == j else 0) for j in range(m.dim)] for i in range(m.dim)]
    return ComplexMap.build(C, C, {0: mat})


def ev_alpha_derived(m: EndoPair, alpha) -> ChainComplex:
    """Cone of ``T - alpha``: ``H_0 = coker``, ``H_1 = ker``."""
    if m.dim == 0:
        return ChainComplex.zero()
    return cone(endo_map(m, alpha))


def ev_zero_derived(m: EndoPair) -> ChainComplex:
    """Derived evaluation at 0: the cofibre of ``T`` on the underlying space."""
    return ev_alpha_derived(m, 0)


def restricted(C: ChainComplex, lo: int, hi: int) -> ChainComplex:
    """Same complex re-expressed on the degree range ``[lo, hi]`` (must contain its support)."""
    for n in C.degrees():
        if C.dim(n) and not lo <= n <= hi:
            raise InvalidComplex(f"degree {n} is outside [{lo}, {hi}]")
    return _restrict(C, lo, hi)
