"""Diagrams of finite-dimensional Q-vector spaces and their Kan extensions.

Pointwise left Kan extension: ``(u_! X)(b) = colim over (u/b) of X o pr``.
A second, global construction presents ``u_! X`` as the quotient of
``(+)_{a, f : u(a) -> b} X_a`` by ``[x, f o u(h)] = [X_h x, f]``; the two
are compared through the canonical map, and ``u_!`` is further checked
against its defining adjunction ``Nat(u_! X, Y) = Nat(X, u^* Y)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..polyalg import linalg
from .category import CategoryError, FinCat, FunctorData, _name
from .comma import comma_category


@dataclass(frozen=True, eq=False)
class VectDiagram:
    """A functor ``cat -> FinVect``: ``maps[m]`` is ``dims[dst] x dims[src]``."""

    cat: FinCat
    dims: Mapping
    maps: Mapping

    def __post_init__(self):
        C = self.cat
        for m in C.morphisms:
            M = self.maps.get(m)
            r, c = self.dims[C.dst[m]], self.dims[C.src[m]]
            if M is None or len(M) != r or any(len(row) != c for row in M):
                raise CategoryError(f"map for {m!r} missing or of the wrong shape")
        for a in C.objects:
            if self.maps[C.id(a)] != linalg.identity(self.dims[a]):
                raise CategoryError(f"identity at {a!r} not sent to the identity")
        for (g, f), h in C.table.items():
            prod = linalg.matmul(self.maps[g], self.maps[f], self.dims[C.dst[f]], self.dims[C.src[f]])
            if prod != self.maps[h]:
                raise CategoryError(f"diagram is not functorial at {g!r} o {f!r}")

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def pullback(self, u: FunctorData) -> "VectDiagram":
        """``u^* X``."""
        return VectDiagram(
            u.source,
            {a: self.dims[u.ob(a)] for a in u.source.objects},
            {m: self.maps[u.mor(m)] for m in u.source.morphisms},
        )

    def to_json(self) -> dict:
        return {
            "dims": {_name(a): d for a, d in self.dims.items()},
            "maps": {_name(m): [[str(x) for x in r] for r in M] for m, M in self.maps.items()},
        }


def _offsets(objs, dims) -> tuple:
    off, o = {}, 0
    for x in objs:
        off[x] = o
        o += dims[x]
    return off, o


def colimit(X: VectDiagram) -> tuple:
    """``(dim, legs)``: the colimit space and the cocone ``X_a -> colim``."""
    C = X.cat
    off, total = _offsets(C.objects, X.dims)
    rels = []
    for m in C.non_identity():
        s, t = C.src[m], C.dst[m]
        M = X.maps[m]
        for k in range(X.dims[s]):
            v = [Fraction(0)] * total
            v[off[s] + k] -= 1
            for i in range(X.dims[t]):
                v[off[t] + i] += M[i][k]
            rels.append(v)
    R = linalg.transpose(rels, total) if rels else [[] for _ in range(total)]
    q, _ = linalg.cokernel(R, total, len(rels))
    k = len(q)
    legs = {a: [row[off[a]:off[a] + X.dims[a]] for row in q] for a in C.objects}
    return k, legs


def limit(X: VectDiagram) -> tuple:
    """``(dim, legs)``: the limit space and the cone ``lim -> X_a``."""
    C = X.cat
    off, total = _offsets(C.objects, X.dims)
    eqs = []
    for m in C.non_identity():
        s, t = C.src[m], C.dst[m]
        M = X.maps[m]
        for i in range(X.dims[t]):
            row = [Fraction(0)] * total
            for k in range(X.dims[s]):
                row[off[s] + k] += M[i][k]
            row[off[t] + i] -= 1
            eqs.append(row)
    basis = linalg.nullspace(eqs, total) if eqs else [[Fraction(int(i == j)) for i in range(total)] for j in range(total)]
    k = len(basis)
    K = linalg.transpose(basis, total) if basis else [[] for _ in range(total)]
    legs = {a: [K[off[a] + i] for i in range(X.dims[a])] for a in C.objects}
    return k, legs


def _left_at(u: FunctorData, X: VectDiagram, b) -> tuple:
    comma, pr = comma_category(u, b, "over")
    Y = X.pullback(pr)
    dim, legs = colimit(Y)
    return comma, Y, dim, legs


def _right_at(u: FunctorData, X: VectDiagram, b) -> tuple:
    comma, pr = comma_category(u, b, "under")
    Y = X.pullback(pr)
    dim, legs = limit(Y)
    return comma, Y, dim, legs


def kan_extend_finvect(u: FunctorData, X: VectDiagram, direction: str = "left") -> VectDiagram:
    """Pointwise left (colimit over ``(u/b)``) or right (limit over ``(b/u)``) Kan extension."""
    if X.cat is not u.source:
        raise CategoryError("diagram lives on a different category than the functor's source")
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    B = u.target
    data = {b: (_left_at if direction == "left" else _right_at)(u, X, b) for b in B.objects}
    dims = {b: data[b][2] for b in B.objects}
    maps = {}
    for g in B.morphisms:
        s, t = B.src[g], B.dst[g]
        if direction == "left":
            # colim_s -> colim_t induced by (a, f) |-> (a, g o f)
            comma_s, Ys, ds, legs_s = data[s]
            comma_t, Yt, dt, legs_t = data[t]
            # the cocone legs of colim_s are jointly surjective; use a section
            # of the stacked legs to define the map
            off, total = _offsets(comma_s.objects, Ys.dims)
            stacked = [[x for obj in comma_s.objects for x in legs_s[obj][i]] for i in range(ds)]
            _, section = _section(stacked, ds, total)
            image = linalg.zeros(dt, total)
            for obj in comma_s.objects:
                a, f = obj
                tgt = legs_t[(a, B.compose(g, f))]
                for i in range(dt):
                    for k in range(Ys.dims[obj]):
                        image[i][off[obj] + k] = tgt[i][k]
            maps[g] = linalg.matmul(image, section, total, ds)
        else:
            # lim_s -> lim_t: component at (a, f : t -> u a) is the leg at (a, f o g)
            comma_s, Ys, ds, legs_s = data[s]
            comma_t, Yt, dt, legs_t = data[t]
            off, total = _offsets(comma_t.objects, Yt.dims)
            big = linalg.zeros(total, ds)
            for obj in comma_t.objects:
                a, f = obj
                src_leg = legs_s[(a, B.compose(f, g))]
                for i in range(Yt.dims[obj]):
                    big[off[obj] + i] = list(src_leg[i])
            K = [[x for x in row] for obj in comma_t.objects for row in legs_t[obj]]
            cols = []
            for j in range(ds):
                sol = linalg.solve(K, [big[i][j] for i in range(total)], dt)
                if sol is None:
                    raise ArithmeticError("induced map leaves the limit")
                cols.append(sol)
            maps[g] = linalg.transpose(cols, dt) if ds else [[] for _ in range(dt)]
    return VectDiagram(B, dims, maps)


def _section(q: list, k: int, n: int) -> tuple:
    """For a surjection ``q : Q^n -> Q^k``, a right inverse ``n x k``."""
    if k == 0:
        return q, [[] for _ in range(n)]
    cols = []
    for j in range(k):
        e = [Fraction(int(i == j)) for i in range(k)]
        x = linalg.solve(q, e, n)
        if x is None:
            raise ArithmeticError("cocone is not jointly surjective")
        cols.append(x)
    return q, linalg.transpose(cols, n)


# ---------------------------------------------------------------------------
# global construction and verification


def left_kan_global(u: FunctorData, X: VectDiagram) -> tuple:
    """``u_! X`` by the coend quotient, with the unit ``X -> u^* u_! X``.

    Returns ``(diagram, quotients)``; ``quotients[b]`` maps the generators
    ``(+)_{(a, f : u a -> b)} X_a`` onto ``(u_! X)(b)``.
    """
    A, B = u.source, u.target
    gens, quots, dims = {}, {}, {}
    for b in B.objects:
        g = [(a, f) for a in A.objects for f in B.hom(u.ob(a), b)]
        off, total = _offsets(g, {x: X.dims[x[0]] for x in g})
        rels = []
        for h in A.non_identity():
            s, t = A.src[h], A.dst[h]
            for f in B.hom(u.ob(t), b):
                fu = B.compose(f, u.mor(h))
                M = X.maps[h]
                for k in range(X.dims[s]):
                    v = [Fraction(0)] * total
                    v[off[(s, fu)] + k] += 1
                    for i in range(X.dims[t]):
                        v[off[(t, f)] + i] -= M[i][k]
                    rels.append(v)
        R = linalg.transpose(rels, total) if rels else [[] for _ in range(total)]
        q, section = linalg.cokernel(R, total, len(rels))
        gens[b], quots[b], dims[b] = (g, off, total), (q, section), len(q)
    maps = {}
    for m in B.morphisms:
        s, t = B.src[m], B.dst[m]
        g_s, off_s, tot_s = gens[s]
        g_t, off_t, tot_t = gens[t]
        push = linalg.zeros(tot_t, tot_s)
        for (a, f) in g_s:
            tgt = (a, B.compose(m, f))
            for k in range(X.dims[a]):
                push[off_t[tgt] + k][off_s[(a, f)] + k] = Fraction(1)
        q_t = quots[t][0]
        sec_s = quots[s][1]
        maps[m] = linalg.matmul(linalg.matmul(q_t, push, tot_t, tot_s), sec_s, tot_s, dims[s])
    return VectDiagram(B, dims, maps), {b: (gens[b], quots[b]) for b in B.objects}


def der4_comparison(u: FunctorData, X: VectDiagram, b) -> tuple:
    """Canonical map ``colim_{(u/b)} pr^* X -> (u_! X)(b)``.

    ``u_! X`` is the global construction; the map is induced by the cocone
    ``X_a --unit--> (u_! X)(u a) --(u_! X)(f)--> (u_! X)(b)``.
    Returns ``(matrix, source_dim, target_dim)``.
    """
    G, info = left_kan_global(u, X)
    B = u.target
    comma, Y, dim, legs = _left_at(u, X, b)
    off, total = _offsets(comma.objects, Y.dims)
    stacked = [[x for obj in comma.objects for x in legs[obj][i]] for i in range(dim)]
    _, section = _section(stacked, dim, total)
    big = linalg.zeros(G.dims[b], total)
    for obj in comma.objects:
        a, f = obj
        ua = u.ob(a)
        (gens, goff, gtot), (q, _) = info[ua]
        unit_col = goff[(a, B.id(ua))]
        unit = [[q[i][unit_col + k] for k in range(X.dims[a])] for i in range(G.dims[ua])]
        leg = linalg.matmul(G.maps[f], unit, G.dims[ua], X.dims[a])
        for i in range(G.dims[b]):
            for k in range(X.dims[a]):
                big[i][off[obj] + k] = leg[i][k]
    return linalg.matmul(big, section, total, dim), dim, G.dims[b]


def is_isomorphism(m: list, rows: int, cols: int) -> bool:
    return rows == cols and (rows == 0 or linalg.rank(m, cols) == rows)


def nat_dim(X: VectDiagram, Y: VectDiagram) -> int:
    """``dim Nat(X, Y)`` by solving the naturality equations."""
    C = X.cat
    blocks = [(a, Y.dims[a], X.dims[a]) for a in C.objects]
    off, o = {}, 0
    for a, r, c in blocks:
        off[a] = o
        o += r * c
    eqs = []
    for m in C.non_identity():
        s, t = C.src[m], C.dst[m]
        Xm, Ym = X.maps[m], Y.maps[m]
        # phi_t Xm = Ym phi_s, entrywise (i, k)
        for i in range(Y.dims[t]):
            for k in range(X.dims[s]):
                row = [Fraction(0)] * o
                for j in range(X.dims[t]):
                    if Xm[j][k]:
                        row[off[t] + i * X.dims[t] + j] += Xm[j][k]
                for j in range(Y.dims[s]):
                    if Ym[i][j]:
                        row[off[s] + j * X.dims[s] + k] -= Ym[i][j]
                eqs.append(row)
    return o - (linalg.rank(eqs, o) if eqs else 0)


def adjunction_dims(u: FunctorData, X: VectDiagram, Y: VectDiagram) -> tuple:
    """``(dim Nat(u_! X, Y), dim Nat(X, u^* Y))`` -- equal when ``u_!`` is left adjoint to ``u^*``."""
    LX = kan_extend_finvect(u, X, "left")
    return nat_dim(LX, Y), nat_dim(X, Y.pullback(u))


def der1_check(u1: FunctorData, u2: FunctorData, X1: VectDiagram, X2: VectDiagram) -> bool:
    """Kan extension along ``u1 + u2`` restricts to the componentwise extensions."""
    from .category import disjoint_union

    A = disjoint_union(u1.source, u2.source)
    B = disjoint_union(u1.target, u2.target)
    us = (u1, u2)
    u = FunctorData(
        A,
        B,
        {(i, a): (i, us[i].ob(a)) for i, a in A.objects},
        {(i, m): (i, us[i].mor(m)) for i, m in A.morphisms},
        name="u1+u2",
    )
    Xs = (X1, X2)
    X = VectDiagram(
        A,
        {(i, a): Xs[i].dims[a] for i, a in A.objects},
        {(i, m): Xs[i].maps[m] for i, m in A.morphisms},
    )
    whole = kan_extend_finvect(u, X, "left")
    for i in (0, 1):
        part = kan_extend_finvect(us[i], Xs[i], "left")
        for b in us[i].target.objects:
            if whole.dims[(i, b)] != part.dims[b]:
                return False
        for m in us[i].target.morphisms:
            s = us[i].target.src[m]
            if whole.dims[(i, s)] and part.dims[s]:
                if linalg.rank(whole.maps[(i, m)], whole.dims[(i, s)]) != linalg.rank(part.maps[m], part.dims[s]):
                    return False
    return True


# ---------------------------------------------------------------------------
# random diagrams


def random_poset_diagram(C: FinCat, rng: random.Random, max_dim: int = 3, summands: int = 2) -> VectDiagram:
    """Direct sum of interval-type indicator modules, conjugated by random bases.

    Each summand is ``Q`` on an up-closed-then-down-closed (convex) set of
    objects with identity maps inside it; this only needs ``C`` thin.
    """
    objs = list(C.objects)
    parts = []
    for _ in range(min(summands, max_dim)):
        lo = rng.choice(objs)
        up = [b for b in objs if C.hom(lo, b)]
        hi = rng.choice(up)
        support = {b for b in up if C.hom(b, hi)}
        parts.append(support)
    dims = {a: 0 for a in objs}
    for a in objs:
        dims[a] = sum(1 for s in parts if a in s)
    idx = {a: [k for k, s in enumerate(parts) if a in s] for a in objs}
    bases = {a: _random_invertible(dims[a], rng) for a in objs}
    maps = {}
    for m in C.morphisms:
        s, t = C.src[m], C.dst[m]
        M = linalg.zeros(dims[t], dims[s])
        for j, k in enumerate(idx[s]):
            if k in idx[t]:
                M[idx[t].index(k)][j] = Fraction(1)
        if dims[s] and dims[t]:
            M = linalg.matmul(linalg.matmul(bases[t], M, dims[t], dims[s]), linalg.inverse(bases[s]), dims[s], dims[s])
        maps[m] = M
    return VectDiagram(C, dims, maps)


def _random_invertible(n: int, rng: random.Random) -> list:
    while True:
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if n == 0 or linalg.rank(M, n) == n:
            return M
