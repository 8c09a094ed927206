"""Bounded replicas of the N-monoid categories used in the evaluation and
universal-property arguments, plus finite cells of squares of free
commutative monoids.

Everything is bounded by ``k``; the adjunction formulas below do not depend
on ``k``, which is what makes the bounded checks meaningful.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .category import CategoryError, FinCat, FunctorData, NatTransData, identity_functor, inclusion, poset
from .contract import Adjunction, Certificate, check_adjunction, contractibility_certificate


# the full grid at k = 8 has 81 objects, above the default cap
TRUNCATION_CAP = 256

# ---------------------------------------------------------------------------
# order categories


def nat_leq(k: int) -> FinCat:
    """``({0..k}, <=)``; initial object 0."""
    return poset(range(k + 1), lambda a, b: a <= b, name=f"(N,<=)_{k}")


def nat_geq(k: int) -> FinCat:
    """``({0..k}, >=)``; terminal object 0."""
    return poset(range(k + 1), lambda a, b: a >= b, name=f"(N,>=)_{k}")


def leq_geq(k: int) -> FinCat:
    """``(N,<=) x (N,>=)`` on ``{0..k}^2``: ``(m,n) -> (m',n')`` iff ``m <= m'`` and ``n >= n'``."""
    els = [(m, n) for m in range(k + 1) for n in range(k + 1)]
    return poset(els, lambda x, y: x[0] <= y[0] and x[1] >= y[1], name=f"LG_{k}", max_objects=TRUNCATION_CAP)


def pair_category(k: int) -> FinCat:
    """Cell of the evaluation-at-1 square, truncated to ``m + n <= k``.

    A morphism ``(m, n) -> (m', n')`` is ``(a1, a2)`` with ``a1 + m = m'``
    and ``a1 + a2 + n' = n``; it exists (uniquely) iff ``m <= m'`` and
    ``m + n >= m' + n'``.
    """
    els = [(m, n) for m in range(k + 1) for n in range(k + 1 - m)]
    return poset(els, lambda x, y: x[0] <= y[0] and x[0] + x[1] >= y[0] + y[1], name=f"T_{k}")


def L_literal(k: int) -> FinCat:
    """``{(a, b) : b <= a <= k}`` as a full subcategory of ``(N,<=) x (N,>=)``."""
    els = [(a, b) for a in range(k + 1) for b in range(a + 1)]
    return poset(els, lambda x, y: x[0] <= y[0] and x[1] >= y[1], name=f"L_{k}")


@dataclass
class ClaimCheck:
    """Outcome of checking a claimed construction: ``ok`` or a counterexample."""

    claim: str
    ok: bool
    counterexample: object = None

    def to_json(self) -> dict:
        return {"claim": self.claim, "ok": self.ok, "counterexample": None if self.ok else str(self.counterexample)}


def _poset_map_counterexample(S: FinCat, T: FinCat, fn) -> object:
    """First morphism of thin ``S`` whose image is not a morphism of thin ``T``."""
    for m in S.morphisms:
        a, b = S.src[m], S.dst[m]
        if fn(a) not in T or fn(b) not in T or not T.hom(fn(a), fn(b)):
            return (a, b, fn(a), fn(b))
    return None


def literal_embedding_check(k: int) -> ClaimCheck:
    """Is ``(m, n) |-> (m + n, n)`` a functor ``T_k -> (N,<=) x (N,>=)``?"""
    ce = _poset_map_counterexample(pair_category(k), leq_geq(k), lambda x: (x[0] + x[1], x[1]))
    return ClaimCheck("(m,n) -> (m+n,n) is a functor from the pair category", ce is None, ce)


def corrected_embedding(k: int) -> FunctorData:
    """``(m, n) |-> (m, m + n)``: fully faithful into ``(N,<=) x (N,>=)``."""
    T, P = pair_category(k), leq_geq(k)
    f = lambda x: (x[0], x[0] + x[1])
    return FunctorData.build(T, P, f, lambda m: (f(m[0]), f(m[1])), name="emb")


def literal_reflection_check(k: int) -> ClaimCheck:
    """Is ``(m, n) |-> (m, n) if m >= n else (n, n)`` a functor ``(N,<=)x(N,>=) -> L``?"""
    ce = _poset_map_counterexample(
        leq_geq(k), L_literal(k), lambda x: x if x[0] >= x[1] else (x[1], x[1])
    )
    return ClaimCheck("(m,n) -> (m,n) or (n,n) is a functor onto L", ce is None, ce)


def inclusion_of_L_has_adjoint(k: int) -> tuple:
    """Does the inclusion ``L_k -> (N,<=) x (N,>=)`` have a left / right adjoint?"""
    from .contract import find_left_adjoint, find_right_adjoint

    L, P = L_literal(k), leq_geq(k)
    i = inclusion(L, P)
    return find_left_adjoint(i) is not None, find_right_adjoint(i) is not None


def _poset_functor(S: FinCat, T: FinCat, fn, name: str) -> FunctorData:
    return FunctorData.build(S, T, fn, lambda m: (fn(m[0]), fn(m[1])), name=name)


def _poset_trans(F: FunctorData, G: FunctorData) -> NatTransData:
    return NatTransData(F, G, {a: (F.ob(a), G.ob(a)) for a in F.source.objects})


def pair_adjunction(k: int) -> Adjunction:
    """``j -| R`` with ``j : (N,>=) -> T``, ``s |-> (0, s)`` and ``R(m, n) = m + n``."""
    N, T = nat_geq(k), pair_category(k)
    j = _poset_functor(N, T, lambda s: (0, s), "j")
    R = _poset_functor(T, N, lambda x: x[0] + x[1], "R")
    return Adjunction(j, R, _poset_trans(identity_functor(N), j.then(R)), _poset_trans(R.then(j), identity_functor(T)))


def L_adjunction(k: int) -> Adjunction:
    """``P -| I`` with ``P(a, b) = a`` and ``I(m) = (m, 0)`` between ``L_k`` and ``(N,<=)_k``."""
    L, N = L_literal(k), nat_leq(k)
    P = _poset_functor(L, N, lambda x: x[0], "P")
    I = _poset_functor(N, L, lambda m: (m, 0), "I")
    return Adjunction(P, I, _poset_trans(identity_functor(L), P.then(I)), _poset_trans(I.then(P), identity_functor(N)))


# ---------------------------------------------------------------------------
# the categories (+ x 1 / e), (+ / e) and the functor G


def C_cat(k: int) -> FinCat:
    """Objects ``(a, b)`` with ``a + b <= k``; morphisms ``(j, k, l) : (a,b) -> (c,d)``
    with ``j + k + c = a`` and ``l + d = b``; composition adds."""
    objs = [(a, b) for a in range(k + 1) for b in range(k + 1 - a)]
    arrows = []
    for x in objs:
        for y in objs:
            (a, b), (c, d) = x, y
            if c <= a and d <= b:
                for j in range(a - c + 1):
                    arrows.append(((x, y, (j, a - c - j, b - d)), x, y))
    return FinCat.build(
        objs,
        arrows,
        lambda x: (x, x, (0, 0, 0)),
        lambda g, f: (f[0], g[1], tuple(p + q for p, q in zip(f[2], g[2]))),
        name=f"C_{k}",
    )


def D_cat(k: int) -> FinCat:
    """Objects ``m <= k``; morphisms ``(i, j) : m -> n`` with ``i + j = m - n``."""
    objs = list(range(k + 1))
    arrows = [((m, n, (i, m - n - i)), m, n) for m in objs for n in range(m + 1) for i in range(m - n + 1)]
    return FinCat.build(
        objs,
        arrows,
        lambda m: (m, m, (0, 0)),
        lambda g, f: (f[0], g[1], (f[2][0] + g[2][0], f[2][1] + g[2][1])),
        name=f"D_{k}",
    )


@dataclass
class SevenLibrary:
    C: FinCat
    D: FinCat
    C0: FinCat
    G: FunctorData
    i0: FunctorData
    Gi0: FunctorData
    L: FunctorData
    F: FunctorData
    L_i0: Adjunction
    F_Gi0: Adjunction


def seven(k: int) -> SevenLibrary:
    C, D = C_cat(k), D_cat(k)
    C0 = C.full_subcategory([x for x in C.objects if x[1] == 0], name=f"C0_{k}")
    G = FunctorData.build(
        C, D, lambda x: x[0] + x[1], lambda m: (m[0][0] + m[0][1], m[1][0] + m[1][1], (m[2][0], m[2][1] + m[2][2])), name="G"
    )
    i0 = inclusion(C0, C, name="i0")
    Gi0 = i0.then(G, name="G.i0")
    L = FunctorData.build(
        C, C0, lambda x: (x[0], 0), lambda m: ((m[0][0], 0), (m[1][0], 0), (m[2][0], m[2][1], 0)), name="L"
    )
    F = FunctorData.build(D, C0, lambda m: (m, 0), lambda g: ((g[0], 0), (g[1], 0), (g[2][0], g[2][1], 0)), name="F")
    unit_L = NatTransData(identity_functor(C), L.then(i0), {x: (x, (x[0], 0), (0, 0, x[1])) for x in C.objects})
    counit_L = NatTransData(i0.then(L), identity_functor(C0), {x: C0.id(x) for x in C0.objects})
    unit_F = NatTransData(identity_functor(D), F.then(Gi0), {m: D.id(m) for m in D.objects})
    counit_F = NatTransData(Gi0.then(F), identity_functor(C0), {x: C0.id(x) for x in C0.objects})
    return SevenLibrary(C, D, C0, G, i0, Gi0, L, F, Adjunction(L, i0, unit_L, counit_L), Adjunction(F, Gi0, unit_F, counit_F))


@dataclass
class Truncations:
    """Everything ``nn_truncations`` builds for one bound ``k``."""

    k: int
    pair: FinCat
    L: FinCat
    embedding: FunctorData
    literal_embedding: ClaimCheck
    literal_reflection: ClaimCheck
    pair_adjunction: Adjunction
    L_adjunction: Adjunction
    seven: SevenLibrary
    certificates: dict = field(default_factory=dict)

    def adjunction_checks(self) -> dict:
        out = {}
        for name, adj in (
            ("pair: j -| R", self.pair_adjunction),
            ("L: P -| I", self.L_adjunction),
            ("C0: L -| i0", self.seven.L_i0),
            ("C0: F -| G.i0", self.seven.F_Gi0),
        ):
            out[name] = check_adjunction(adj.left, adj.right, adj.unit, adj.counit)
        return out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "pairObjects": len(self.pair.objects),
            "LObjects": len(self.L.objects),
            "literalEmbedding": self.literal_embedding.to_json(),
            "literalReflection": self.literal_reflection.to_json(),
            "adjunctions": self.adjunction_checks(),
            "certificates": {k: v.to_json() for k, v in self.certificates.items()},
        }


def nn_truncations(k: int) -> Truncations:
    if k < 1:
        raise ValueError("k must be at least 1")
    pa, la = pair_adjunction(k), L_adjunction(k)
    pair, L = pa.right.source, la.left.source
    t = Truncations(
        k,
        pair,
        L,
        corrected_embedding(k),
        literal_embedding_check(k),
        literal_reflection_check(k),
        pa,
        la,
        seven(k),
    )
    t.certificates = {
        "pair": contractibility_certificate(pair, strategies=["zigzag"], hints=[pa.left, pa.right]),
        "L": contractibility_certificate(L, strategies=["zigzag"], hints=[la.left, la.right]),
    }
    return t


# ---------------------------------------------------------------------------
# squares of free commutative monoids N^r with linear functors


def _matvec(M, v):
    return tuple(sum(r[i] * v[i] for i in range(len(v))) for r in M)


@dataclass(frozen=True)
class MonoidSquare:
    """A commuting square of one-object categories ``N^r`` and linear functors.

    Matrices have nonnegative integer entries; ``alpha`` is a fixed element
    of the corner monoid (every component of the transformation).
    """

    dims: tuple  # ranks (D, A, B, C)
    top: tuple
    left: tuple
    right: tuple
    bottom: tuple
    alpha: tuple = ()
    name: str = ""

    def __post_init__(self):
        rD, rA, rB, rC = self.dims
        alpha = self.alpha or (0,) * rC
        object.__setattr__(self, "alpha", tuple(alpha))
        for d in range(rD):
            e = tuple(int(i == d) for i in range(rD))
            if _matvec(self.right, _matvec(self.top, e)) != _matvec(self.bottom, _matvec(self.left, e)):
                raise CategoryError("square does not commute")


def monoid_cell(sq: MonoidSquare, gamma: tuple, bound: int | None = None) -> tuple:
    """The cell ``(*/D/*)_gamma``: objects ``(f, g)`` with ``bottom g + alpha + right f = gamma``.

    A morphism ``(f, g) -> (f', g')`` is ``h`` with ``f' = f + top h`` and
    ``g = g' + left h``.  ``bound`` caps ``|f| + |g|`` (needed when the cell
    is infinite).  Returns ``(FinCat, truncated)``.
    """
    rD, rA, rB, rC = sq.dims
    target = tuple(gamma)
    if len(target) != rC:
        raise ValueError("gamma has the wrong rank")
    finite_obj = all(any(sq.right[i][j] for i in range(rC)) for j in range(rA)) and all(
        any(sq.bottom[i][j] for i in range(rC)) for j in range(rB)
    )
    cap = sum(target) if finite_obj else bound
    if cap is None:
        raise ValueError("cell is infinite; pass a bound")
    objs = []
    for total in range(cap + 1):
        for vec in _compositions(total, rA + rB):
            f, g = vec[:rA], vec[rA:]
            lhs = tuple(x + y + z for x, y, z in zip(_matvec(sq.bottom, g), sq.alpha, _matvec(sq.right, f)))
            if lhs == target:
                objs.append((f, g))
    hcap = cap
    arrows = []
    for x in objs:
        for y in objs:
            for total in range(hcap + 1):
                for h in _compositions(total, rD):
                    if tuple(a + b for a, b in zip(x[0], _matvec(sq.top, h))) == y[0] and tuple(
                        a + b for a, b in zip(y[1], _matvec(sq.left, h))
                    ) == x[1]:
                        arrows.append(((x, y, h), x, y))
    truncated = not finite_obj
    cat = FinCat.build(
        objs,
        arrows,
        lambda x: (x, x, (0,) * rD),
        lambda g, f: (f[0], g[1], tuple(p + q for p, q in zip(f[2], g[2]))),
        name=f"cell{tuple(gamma)}",
        validate=False,
    )
    return cat, truncated


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def ev1_square() -> MonoidSquare:
    """``N x N --(1 x p)--> N``, ``+ : N x N -> N``, both ``N -> e``."""
    return MonoidSquare((2, 1, 1, 0), ((1, 0),), ((1, 1),), (), (), name="ev1")


def fold_square() -> MonoidSquare:
    """``N x N --+--> N`` over ``N --id--> N``: exact iff ``+_! +^* = Id``."""
    return MonoidSquare((2, 1, 1, 1), ((1, 1),), ((1, 1),), ((1,),), ((1,),), name="fold")


def plus_square() -> MonoidSquare:
    """``N^3 --(1 x +)--> N^2``, ``(+ x 1) : N^3 -> N^2``, both ``+ : N^2 -> N``."""
    return MonoidSquare(
        (3, 2, 2, 1),
        ((1, 0, 0), (0, 1, 1)),
        ((1, 1, 0), (0, 0, 1)),
        ((1, 1),),
        ((1, 1),),
        name="plus",
    )


@dataclass
class MonoidSquareReport:
    name: str
    cells: list  # (gamma, objects, morphisms, truncated, Certificate)

    @property
    def verdict(self) -> str:
        vs = [c[4].verdict for c in self.cells]
        if any(v.refutes for v in vs):
            return "Refuted"
        if all(v.certifies for v in vs):
            return "Certified" if not any(c[3] for c in self.cells) else "CertifiedOnTruncations"
        return "Inconclusive"

    def to_json(self) -> dict:
        return {
            "square": self.name,
            "verdict": self.verdict,
            "cells": [
                {"gamma": list(g), "objects": o, "morphisms": m, "truncated": t, "certificate": c.to_json()}
                for g, o, m, t, c in self.cells
            ],
        }


def monoid_square_check(sq: MonoidSquare, max_gamma: int = 3, bound: int = 4, strategies=None) -> MonoidSquareReport:
    """Certify cells for every ``gamma`` with entries up to ``max_gamma``."""
    rC = sq.dims[3]
    cells = []
    for gamma in itertools.product(range(max_gamma + 1), repeat=rC):
        cat, truncated = monoid_cell(sq, gamma, bound)
        cert = contractibility_certificate(cat, strategies=strategies, refutations=not truncated)
        cells.append((gamma, len(cat.objects), len(cat.morphisms), truncated, cert))
    return MonoidSquareReport(sq.name, cells)
