"""The module model: Q-Mod as the base and Q[t]-Mod as its affine line.

A Q[t]-module is a Q-vector space with a distinguished endomorphism.  Two
encodings live side by side:

* :class:`FpModule` -- a finitely presented module over Q[vars], the
  cokernel of a presentation matrix whose columns are relations;
* :class:`EndoPair` -- a finite-dimensional space with an endomorphism
  matrix, i.e. a torsion Q[t]-module given by its underlying diagram.

The Day tensor ``M (x) N = +_!(M [x] N)`` and evaluation at a coherent
endomorphism of the unit are computed on presentations; the coequalizer
tensor, internal hom and colimit-style evaluation at 1 are computed on
endomorphism pairs by linear algebra.  The two routes are independent and
the test-suite compares them.

Everything here is the H0 (abelian) truncation of the derived functors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .polyalg import linalg
from .polyalg.matrix import PolyMatrix
from .polyalg.poly import Poly, VariableMismatch, poly
from .polyalg.snf import NoSmithForm, smith_normal_form


# ---------------------------------------------------------------------------
# endomorphism pairs


@dataclass(frozen=True)
class EndoPair:
    """A vector space Q^dim with endomorphism ``endo`` (dim x dim)."""

    dim: int
    endo: tuple

    def __post_init__(self):
        if len(self.endo) != self.dim or any(len(r) != self.dim for r in self.endo):
            raise ValueError(f"endomorphism must be {self.dim}x{self.dim}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "EndoPair":
        return cls(len(rows), tuple(tuple(Fraction(x) for x in r) for r in rows))

    @classmethod
    def scalar(cls, alpha) -> "EndoPair":
        """The unit with endomorphism ``alpha``: ``(1, alpha)``."""
        return cls.from_rows([[alpha]])

    @classmethod
    def identity(cls, n: int) -> "EndoPair":
        return cls.from_rows(linalg.identity(n))

    @classmethod
    def zero(cls, n: int) -> "EndoPair":
        return cls.from_rows(linalg.zeros(n, n))

    @classmethod
    def jordan(cls, eigenvalue, size: int) -> "EndoPair":
        rows = linalg.zeros(size, size)
        for i in range(size):
            rows[i][i] = Fraction(eigenvalue)
            if i + 1 < size:
                rows[i][i + 1] = Fraction(1)
        return cls.from_rows(rows)

    @classmethod
    def companion(cls, p: Poly) -> "EndoPair":
        """Companion matrix of a monic univariate polynomial.

        Its characteristic matrix ``tI - C`` has invariant factors
        ``(1, ..., 1, p)``.
        """
        p = p.monic()
        c = p.coeffs()
        d = len(c) - 1
        rows = linalg.zeros(d, d)
        for i in range(1, d):
            rows[i][i - 1] = Fraction(1)
        for i in range(d):
            rows[i][d - 1] = -c[i]
        return cls.from_rows(rows)

    @staticmethod
    def direct_sum(*pairs: "EndoPair") -> "EndoPair":
        n = sum(p.dim for p in pairs)
        rows = linalg.zeros(n, n)
        o = 0
        for p in pairs:
            for i in range(p.dim):
                for j in range(p.dim):
                    rows[o + i][o + j] = p.endo[i][j]
            o += p.dim
        return EndoPair.from_rows(rows)

    def matrix(self) -> list:
        return [list(r) for r in self.endo]

    def conjugate(self, p: Sequence[Sequence]) -> "EndoPair":
        """The isomorphic pair ``P T P^-1``."""
        p = linalg.to_fractions(p)
        return EndoPair.from_rows(linalg.matmul(linalg.matmul(p, self.matrix()), linalg.inverse(p)))

    def __str__(self):
        return f"EndoPair(dim={self.dim}, endo={[[str(x) for x in r] for r in self.endo]})"


# ---------------------------------------------------------------------------
# finitely presented modules


@dataclass(frozen=True)
class CanonicalForm:
    """Free rank plus the non-unit monic invariant factors."""

    ring: tuple
    free_rank: int
    factors: tuple

    def __str__(self):
        ring = f"Q[{','.join(self.ring)}]" if self.ring else "Q"
        parts = []
        if self.free_rank:
            parts.append(ring if self.free_rank == 1 else f"{ring}^{self.free_rank}")
        parts += [f"{ring}/({f})" for f in self.factors]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"ring": list(self.ring), "freeRank": self.free_rank, "factors": [str(f) for f in self.factors]}


@dataclass(frozen=True)
class FpModule:
    """``coker(presentation)`` over Q[ring]; columns are relations."""

    ring: tuple
    generators: int
    presentation: PolyMatrix

    def __post_init__(self):
        if tuple(self.presentation.vars) != tuple(self.ring):
            raise VariableMismatch(f"presentation over {self.presentation.vars}, module over {self.ring}")
        if self.presentation.rows != self.generators:
            raise ValueError("presentation needs one row per generator")

    # constructors

    @classmethod
    def from_relations(cls, ring: Iterable[str], generators: int, relations: Sequence[Sequence]) -> "FpModule":
        """Relations are given row-wise (``generators`` rows, one column per relation)."""
        ring = tuple(ring)
        cols = len(relations[0]) if relations else 0
        return cls(ring, generators, PolyMatrix.build(relations, ring, cols))

    @classmethod
    def free(cls, rank: int, ring: Iterable[str] = ("t",)) -> "FpModule":
        ring = tuple(ring)
        return cls(ring, rank, PolyMatrix.zeros(rank, 0, ring))

    @classmethod
    def zero(cls, ring: Iterable[str] = ("t",)) -> "FpModule":
        return cls.free(0, ring)

    @classmethod
    def cyclic(cls, p, ring: Iterable[str] = ("t",)) -> "FpModule":
        """``Q[ring]/(p)``."""
        ring = tuple(ring)
        return cls(ring, 1, PolyMatrix.build([[poly(p, ring)]], ring))

    @classmethod
    def from_endo(cls, m: EndoPair, var: str = "t", base: Iterable[str] = ()) -> "FpModule":
        """The torsion module ``coker(t I - T)`` of an endomorphism pair."""
        ring = tuple(base) + (var,)
        t = Poly.var(var, ring)
        rows = [[(t if i == j else 0) - Poly.const(m.endo[i][j], ring) for j in range(m.dim)] for i in range(m.dim)]
        return cls(ring, m.dim, PolyMatrix.build(rows, ring, m.dim))

    @staticmethod
    def direct_sum(*mods: "FpModule") -> "FpModule":
        ring = mods[0].ring
        for M in mods:
            if M.ring != ring:
                raise VariableMismatch("direct sum over different rings")
        pres = PolyMatrix.block_diag([M.presentation for M in mods], ring)
        return FpModule(ring, pres.rows, pres)

    # canonical form (rings with at most one variable)

    @cached_property
    def canonical(self) -> CanonicalForm:
        if len(self.ring) > 1:
            raise NoSmithForm(
                f"no canonical form over Q[{', '.join(self.ring)}]; apply type witnesses to reduce first"
            )
        res = smith_normal_form(self.presentation, transforms=False)
        factors = res.factors
        nonunit = tuple(f for f in factors if f.degree() > 0)
        return CanonicalForm(self.ring, self.generators - len(factors), nonunit)

    def canonical_form(self) -> CanonicalForm:
        return self.canonical

    def reduced(self) -> "FpModule":
        """Isomorphic module presented by its invariant factors."""
        cf = self.canonical
        n = len(cf.factors)
        pres = PolyMatrix.diagonal(cf.factors, n + cf.free_rank, n, self.ring)
        return FpModule(self.ring, n + cf.free_rank, pres)

    def is_torsion(self) -> bool:
        return self.canonical.free_rank == 0

    def dimension(self) -> int:
        """Q-dimension (finite only for torsion modules or ring Q)."""
        cf = self.canonical
        if not self.ring:
            return cf.free_rank
        if cf.free_rank:
            raise ValueError("module has a free part; its Q-dimension is infinite")
        return sum(f.degree() for f in cf.factors)

    def to_endo(self) -> EndoPair:
        """Underlying diagram of a torsion Q[t]-module (rational canonical form)."""
        if len(self.ring) != 1:
            raise ValueError("to_endo needs a one-variable ring")
        if not self.is_torsion():
            raise ValueError("module is not torsion")
        blocks = [EndoPair.companion(f) for f in self.canonical.factors]
        return EndoPair.direct_sum(*blocks) if blocks else EndoPair.zero(0)

    def __str__(self):
        ring = f"Q[{','.join(self.ring)}]" if self.ring else "Q"
        return f"coker {self.presentation} on {self.generators} generator(s) over {ring}"


# ---------------------------------------------------------------------------
# ring maps and coherent endomorphisms of the unit


@dataclass(frozen=True)
class RingMap:
    source_vars: tuple
    target_vars: tuple
    images: tuple

    def __post_init__(self):
        if len(self.images) != len(self.source_vars):
            raise ValueError("need one image per source variable")
        for p in self.images:
            if p.vars != tuple(self.target_vars):
                raise VariableMismatch(f"image {p} not over {self.target_vars}")

    @classmethod
    def build(cls, source_vars: Iterable[str], target_vars: Iterable[str], images: Sequence) -> "RingMap":
        source_vars, target_vars = tuple(source_vars), tuple(target_vars)
        return cls(source_vars, target_vars, tuple(poly(p, target_vars) for p in images))

    @classmethod
    def identity(cls, vars: Iterable[str]) -> "RingMap":
        vars = tuple(vars)
        return cls(vars, vars, tuple(Poly.var(v, vars) for v in vars))

    def mapping(self) -> dict:
        return dict(zip(self.source_vars, self.images))

    def __call__(self, p: Poly) -> Poly:
        return p.substitute(self.mapping(), self.target_vars)

    def then(self, other: "RingMap") -> "RingMap":
        """The composite ``other o self``."""
        if other.source_vars != self.target_vars:
            raise VariableMismatch("ring maps are not composable")
        return RingMap(self.source_vars, other.target_vars, tuple(other(p) for p in self.images))

    def __str__(self):
        pairs = ", ".join(f"{v} -> {p}" for v, p in zip(self.source_vars, self.images))
        return f"RingMap({pairs}; into Q[{','.join(self.target_vars)}])"


@dataclass(frozen=True)
class TypeWitness:
    """The coherent endomorphism ``(1, alpha)`` of the unit over Q[target_vars]."""

    target_vars: tuple
    alpha: Poly

    def __post_init__(self):
        if self.alpha.vars != tuple(self.target_vars):
            raise VariableMismatch(f"alpha over {self.alpha.vars}, expected {self.target_vars}")

    @classmethod
    def build(cls, alpha, target_vars: Iterable[str] = ()) -> "TypeWitness":
        target_vars = tuple(target_vars)
        return cls(target_vars, poly(alpha, target_vars))

    def module(self, var: str = "t") -> FpModule:
        """Free rank one over the base with ``var`` acting by ``alpha``."""
        ring = tuple(self.target_vars) + (var,)
        rel = Poly.var(var, ring) - self.alpha.embed(ring)
        return FpModule(ring, 1, PolyMatrix.build([[rel]], ring))


# ---------------------------------------------------------------------------
# operations on presentations


def base_change(M: FpModule, phi: RingMap) -> FpModule:
    """Extension of scalars along ``phi`` (substitute into the presentation)."""
    if tuple(M.ring) != tuple(phi.source_vars):
        raise VariableMismatch(f"module over {M.ring}, ring map from {phi.source_vars}")
    pres = M.presentation.substitute(phi.mapping(), phi.target_vars)
    return FpModule(tuple(phi.target_vars), M.generators, pres)


def extend_coefficients(M: FpModule, ring: Iterable[str]) -> FpModule:
    """Base change along the inclusion of Q[M.ring] into a larger ring."""
    ring = tuple(ring)
    return FpModule(ring, M.generators, M.presentation.embed(ring))


def structure_i(V: FpModule, var: str = "t") -> FpModule:
    """The structure morphism ``i_!``: adjoin a free variable to the ring."""
    if var in V.ring:
        raise ValueError(f"{var!r} already a variable of {V.ring}")
    return extend_coefficients(V, tuple(V.ring) + (var,))


def _fresh(base: tuple, names: Sequence[str]) -> tuple:
    names = tuple(names)
    if set(names) & set(base) or len(set(names)) != len(names):
        raise ValueError(f"variable names {names} clash with {base}")
    return names


def external_product(M: FpModule, N: FpModule, new_vars: Sequence[str] = ("t1", "t2")) -> FpModule:
    """``M [x] N`` over ``base + new_vars`` with the two commuting actions.

    Both modules must share all but their last variable (the common base).
    Presentation ``[A(t1) (x) I | I (x) B(t2)]`` on ``g_M * g_N`` generators.
    """
    if not M.ring or not N.ring:
        raise ValueError("external product needs an affine-line variable on each side")
    base = tuple(M.ring[:-1])
    if tuple(N.ring[:-1]) != base:
        raise VariableMismatch(f"different bases {M.ring[:-1]} and {N.ring[:-1]}")
    t1, t2 = _fresh(base, new_vars)
    ring = base + (t1, t2)
    keep = {v: Poly.var(v, ring) for v in base}
    A = M.presentation.substitute({**keep, M.ring[-1]: Poly.var(t1, ring)}, ring)
    B = N.presentation.substitute({**keep, N.ring[-1]: Poly.var(t2, ring)}, ring)
    left = A.kron(PolyMatrix.identity(N.generators, ring))
    right = PolyMatrix.identity(M.generators, ring).kron(B)
    return FpModule(ring, M.generators * N.generators, left.hstack(right))


def plus_shriek(P: FpModule, var: str = "t") -> FpModule:
    """``+_!``: identify the last two variables (extension along t1, t2 -> t)."""
    if len(P.ring) < 2:
        raise ValueError("plus_shriek needs two affine-line variables")
    base = tuple(P.ring[:-2])
    ring = base + (_fresh(base, [var])[0],)
    images = {v: Poly.var(v, ring) for v in base}
    images[P.ring[-2]] = images[P.ring[-1]] = Poly.var(var, ring)
    return FpModule(ring, P.generators, P.presentation.substitute(images, ring))


def restrict_plus(M: FpModule, new_vars: Sequence[str] = ("t1", "t2")) -> FpModule:
    """``+^*``: restriction along Q[t1, t2] -> Q[t]; presentation ``[A(t1) | (t1 - t2) I]``."""
    if not M.ring:
        raise ValueError("restrict_plus needs an affine-line variable")
    base = tuple(M.ring[:-1])
    t1, t2 = _fresh(base, new_vars)
    ring = base + (t1, t2)
    images = {v: Poly.var(v, ring) for v in base}
    images[M.ring[-1]] = Poly.var(t1, ring)
    A = M.presentation.substitute(images, ring)
    diff = PolyMatrix.identity(M.generators, ring).scale(Poly.var(t1, ring) - Poly.var(t2, ring))
    return FpModule(ring, M.generators, A.hstack(diff))


def tensor_a1(M: FpModule, N: FpModule, reduce: bool = True) -> FpModule:
    """Day tensor ``+_!(M [x] N)`` over the common ring (tensor over Q[t]).

    With ``reduce`` (rings of at most one variable) the inputs are first
    replaced by their invariant-factor presentations, which keeps the
    tensor presentation small.
    """
    if M.ring != N.ring:
        raise VariableMismatch(f"modules over {M.ring} and {N.ring}")
    if reduce and len(M.ring) == 1:
        M, N = M.reduced(), N.reduced()
    base, var = tuple(M.ring[:-1]), M.ring[-1]
    names = (f"{var}_1", f"{var}_2")
    return plus_shriek(external_product(M, N, names), var)


def tensor_over(M: FpModule, N: FpModule) -> FpModule:
    """Tensor over the whole multivariate ring Q[ring] (Day tensor in every variable)."""
    if M.ring != N.ring:
        raise VariableMismatch(f"modules over {M.ring} and {N.ring}")
    ring = tuple(M.ring)
    left = M.presentation.kron(PolyMatrix.identity(N.generators, ring))
    right = PolyMatrix.identity(M.generators, ring).kron(N.presentation)
    if not ring:
        return FpModule(ring, M.generators * N.generators, left.hstack(right))
    # route through the external product, one variable pair at a time
    a = {v: f"{v}__a" for v in ring}
    b = {v: f"{v}__b" for v in ring}
    big = tuple(a.values()) + tuple(b.values())
    A = M.presentation.substitute({v: Poly.var(a[v], big) for v in ring}, big)
    B = N.presentation.substitute({v: Poly.var(b[v], big) for v in ring}, big)
    P = A.kron(PolyMatrix.identity(N.generators, big)).hstack(PolyMatrix.identity(M.generators, big).kron(B))
    fold = {a[v]: Poly.var(v, ring) for v in ring}
    fold.update({b[v]: Poly.var(v, ring) for v in ring})
    return FpModule(ring, M.generators * N.generators, P.substitute(fold, ring))


@dataclass(frozen=True)
class Underlying:
    """``i^*`` of a module: the base module plus the action of the last variable."""

    module: FpModule
    action: PolyMatrix


def underlying(M: FpModule) -> Underlying:
    """Forget the last variable: ``i^*`` for modules finitely generated over the base.

    Needs, for the generators, relations of the shape ``t U + W`` with ``U``
    a constant invertible matrix (as produced by ``(1, alpha)`` witnesses
    or characteristic matrices ``t I - T``).  Then ``t`` acts by
    ``T = -W U^-1`` and the other relations ``sum t^k r_k`` become
    ``sum T^k r_k`` over the base.
    """
    if not M.ring:
        raise ValueError("module has no variable to forget")
    ring = tuple(M.ring)
    base, var = ring[:-1], ring[-1]
    g = M.generators
    k = len(ring) - 1
    chosen, us, ws = [], [], []
    for j in range(M.presentation.cols):
        col = M.presentation.column(j)
        u, w, ok = [], [], True
        for p in col:
            lin = Poly(ring, {e: c for e, c in p.terms.items() if e[k] == 1})
            rest = Poly(ring, {e: c for e, c in p.terms.items() if e[k] == 0})
            if not _is_var_times_const(lin, k) or any(e[k] > 1 for e in p.terms):
                ok = False
                break
            u.append(sum(lin.terms.values(), Fraction(0)))
            w.append(rest)
        if not ok:
            continue
        if linalg.rank([list(x) for x in us + [u]], g) == len(us) + 1:
            chosen.append(j)
            us.append(u)
            ws.append(w)
            if len(us) == g:
                break
    if len(us) != g:
        raise ValueError("cannot forget the variable: no t-linear block with constant invertible coefficient")
    # columns of U are the u vectors
    U = linalg.transpose(us, g) if g else []
    Uinv = linalg.inverse(U) if g else []
    bring = tuple(base)
    W = [[ws[c][i].substitute({v: Poly.var(v, bring) for v in base} | {var: Poly.zero(bring)}, bring)
          for c in range(g)] for i in range(g)]
    # T = -W U^-1
    T = []
    for i in range(g):
        row = []
        for j in range(g):
            acc = Poly.zero(bring)
            for c in range(g):
                if Uinv[c][j]:
                    acc = acc - W[i][c] * Uinv[c][j]
            row.append(acc)
        T.append(tuple(row))
    Tm = PolyMatrix(bring, g, g, tuple(T))
    others = []
    for j in range(M.presentation.cols):
        if j in chosen:
            continue
        col = M.presentation.column(j)
        deg = max((p.degree_in(var) for p in col), default=-1)
        acc = PolyMatrix.zeros(g, 1, bring)
        power = PolyMatrix.identity(g, bring)
        for d in range(deg + 1):
            coeff = [[Poly(bring, {e[:k] + e[k + 1:]: c for e, c in p.terms.items() if e[k] == d})] for p in col]
            acc = acc + power @ PolyMatrix(bring, g, 1, tuple(tuple(r) for r in coeff))
            power = power @ Tm
        others.append(acc)
    pres = others[0].hstack(*others[1:]) if others else PolyMatrix.zeros(g, 0, bring)
    return Underlying(FpModule(bring, g, pres), Tm)


def _is_var_times_const(lin: Poly, k: int) -> bool:
    return all(sum(e) == 1 and e[k] == 1 for e in lin.terms)


def ev_alpha(M: FpModule, w: TypeWitness, route: str = "substitution") -> FpModule:
    """Evaluation at the coherent endomorphism ``(1, alpha)``.

    ``substitution``: base change along ``t -> alpha``.
    ``tensor``: ``i^* +_!(M [x] (1, alpha))`` through the external product,
    the fold of the two line variables, and forgetting the last variable.

    ``M`` lives over ``Q[t]`` (coefficients are extended to the witness's
    ring first) or over ``Q[target_vars, t]``.
    """
    target = tuple(w.target_vars)
    if not M.ring:
        raise ValueError("ev_alpha needs a module over the affine line")
    var = M.ring[-1]
    base = tuple(M.ring[:-1])
    if base != target:
        if base:
            raise VariableMismatch(f"module base {base} differs from witness ring {target}")
        M = extend_coefficients(M, target + (var,))
    if route == "substitution":
        images = [Poly.var(v, target) for v in target] + [w.alpha]
        return base_change(M, RingMap(tuple(M.ring), target, tuple(images)))
    if route == "tensor":
        Y = w.module(var)
        P = external_product(M, Y, (f"{var}_1", f"{var}_2"))
        return underlying(plus_shriek(P, var)).module
    raise ValueError(f"unknown route {route!r}")


def ev_one_via_colimit(m: EndoPair) -> FpModule:
    """Colimit of the N-shaped diagram ``(M, T)``: ``coker(T - I)``."""
    rows = [[m.endo[i][j] - (1 if i == j else 0) for j in range(m.dim)] for i in range(m.dim)]
    return FpModule((), m.dim, PolyMatrix.from_constants(rows, m.dim))


def tensor_coeq(m: EndoPair, n: EndoPair) -> EndoPair:
    """Coequalizer of ``T (x) 1`` and ``1 (x) S`` on the Q-tensor product."""
    T, S = m.matrix(), n.matrix()
    Im, In = linalg.identity(m.dim), linalg.identity(n.dim)
    TI = linalg.kron(T, In) if m.dim and n.dim else linalg.zeros(m.dim * n.dim, m.dim * n.dim)
    IS = linalg.kron(Im, S) if m.dim and n.dim else linalg.zeros(m.dim * n.dim, m.dim * n.dim)
    size = m.dim * n.dim
    D = [[TI[i][j] - IS[i][j] for j in range(size)] for i in range(size)]
    q, section = linalg.cokernel(D, size, size)
    k = len(q)
    if k == 0:
        return EndoPair.zero(0)
    induced = linalg.matmul(linalg.matmul(q, TI, size, size), section, size, k)
    return EndoPair.from_rows(induced)


def hom_fp(m: EndoPair, n: EndoPair) -> EndoPair:
    """Internal hom: intertwiners ``X T_m = T_n X``, acted on by ``T_n``."""
    a, b = m.dim, n.dim
    Tm, Tn = m.matrix(), n.matrix()
    size = a * b  # X is b x a, flattened row-major: X[i][k] -> i * a + k
    eqs = []
    for i in range(b):
        for j in range(a):
            row = [Fraction(0)] * size
            for k in range(a):
                row[i * a + k] += Tm[k][j]
            for k in range(b):
                row[k * a + j] -= Tn[i][k]
            eqs.append(row)
    basis = linalg.nullspace(eqs, size) if size else []
    r = len(basis)
    if r == 0:
        return EndoPair.zero(0)
    B = linalg.transpose(basis, size)  # size x r
    cols = []
    for vec in basis:
        X = [vec[i * a:(i + 1) * a] for i in range(b)]
        Y = linalg.matmul(Tn, X, b, a)
        flat = [Y[i][k] for i in range(b) for k in range(a)]
        coords = linalg.solve(B, flat, r)
        assert coords is not None, "post-composition must preserve intertwiners"
        cols.append(coords)
    return EndoPair.from_rows(linalg.transpose(cols, r))


def iso_test(M: FpModule, N: FpModule) -> bool:
    """Isomorphism over Q or Q[t] by comparing Smith canonical forms."""
    if M.ring != N.ring:
        raise VariableMismatch(f"modules over {M.ring} and {N.ring}")
    if len(M.ring) > 1:
        raise NoSmithForm("iso_test needs at most one variable; reduce with type witnesses first")
    a, b = M.canonical, N.canonical
    return a.free_rank == b.free_rank and a.factors == b.factors


def fp(m: EndoPair, var: str = "t") -> FpModule:
    """Shorthand for :meth:`FpModule.from_endo`."""
    return FpModule.from_endo(m, var)
