"""Seeded random inputs for the property suites.

Eigenvalues are drawn from ``{-2..2}`` so coincidences between two pairs
(the ``alpha == beta`` branch of most formulas) happen often.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .fincat import FinCat, FunctorData, poset
from .modcat import EndoPair, FpModule, RingMap
from .polyalg.matrix import PolyMatrix
from .polyalg.poly import Poly

EIGENVALUES = (-2, -1, 0, 1, 2)


def rng_for(seed: int, *tags) -> random.Random:
    """Independent stream per (seed, tags) so suites do not perturb each other."""
    return random.Random(f"{seed}/" + "/".join(str(t) for t in tags))


def random_rational(rng: random.Random, bound: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2)))


def random_poly(rng: random.Random, max_deg: int, var: str = "s", vars: tuple | None = None) -> Poly:
    vars = vars or (var,)
    deg = rng.randint(0, max_deg)
    coeffs = [random_rational(rng) for _ in range(deg + 1)]
    if deg and coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return Poly(vars, {(k,): c for k, c in enumerate(coeffs)})


def random_monic(rng: random.Random, max_deg: int, var: str = "t") -> Poly:
    """Product of linear factors with small roots, sometimes times ``t^2 + 1``."""
    t = Poly.var(var, (var,))
    p = Poly.one((var,))
    deg = rng.randint(1, max_deg)
    if deg >= 2 and rng.random() < 0.2:
        p = t * t + 1
        deg -= 2
    for _ in range(deg):
        p = p * (t - rng.choice(EIGENVALUES))
    return p


def random_invertible(rng: random.Random, n: int) -> list:
    """Unitriangular product ``L U`` with small entries: always invertible."""
    lower = [[Fraction(1) if i == j else (Fraction(rng.randint(-1, 1)) if i > j else Fraction(0)) for j in range(n)] for i in range(n)]
    upper = [[Fraction(1) if i == j else (Fraction(rng.randint(-1, 1)) if i < j else Fraction(0)) for j in range(n)] for i in range(n)]
    return [[sum(lower[i][k] * upper[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_endo(rng: random.Random, max_dim: int = 5, min_dim: int = 1) -> EndoPair:
    """Companion/Jordan blocks with eigenvalues in -2..2, in a random basis."""
    target = rng.randint(min_dim, max_dim)
    blocks, dim = [], 0
    while dim < target:
        size = rng.randint(1, target - dim)
        if rng.random() < 0.5:
            blocks.append(EndoPair.jordan(rng.choice(EIGENVALUES), size))
        else:
            blocks.append(EndoPair.companion(random_monic(rng, size)))
        dim += blocks[-1].dim
    m = EndoPair.direct_sum(*blocks) if blocks else EndoPair.zero(0)
    if m.dim > max_dim:
        return random_endo(rng, max_dim, min_dim)
    return m.conjugate(random_invertible(rng, m.dim)) if m.dim else m


def invertible_endo(rng: random.Random, max_dim: int = 5) -> EndoPair:
    """An endomorphism pair whose matrix is invertible (no eigenvalue 0)."""
    while True:
        m = random_endo(rng, max_dim)
        t0 = FpModule.from_endo(m).presentation.substitute({"t": Poly.const(0, ())}, ())
        if m.dim and FpModule((), m.dim, t0).canonical.free_rank == 0:
            return m


def _scramble(rng: random.Random, M: FpModule, moves: int = 3) -> FpModule:
    """Unimodular row/column moves with multipliers of degree at most one."""
    ring = M.ring
    t = Poly.var(ring[0], ring)
    P = M.presentation
    g, r = P.rows, P.cols
    rows = [list(row) for row in P.entries]
    for _ in range(moves):
        c = Poly.const(rng.randint(-1, 1), ring) + (t * rng.randint(-1, 1) if rng.random() < 0.5 else Poly.zero(ring))
        if g >= 2 and rng.random() < 0.5:
            i, j = rng.sample(range(g), 2)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        elif r >= 2:
            i, j = rng.sample(range(r), 2)
            for row in rows:
                row[i] = row[i] + c * row[j]
    if g and rng.random() < 0.3:
        # a redundant relation: combination of existing ones (or zero)
        extra = [Poly.zero(ring) for _ in range(g)]
        for j in range(r):
            c = Poly.const(rng.randint(-1, 1), ring)
            extra = [e + c * row[j] for e, row in zip(extra, rows)]
        rows = [row + [e] for row, e in zip(rows, extra)]
        r += 1
    return FpModule(ring, g, PolyMatrix.build(rows, ring, r))


def random_torsion_module(rng: random.Random, max_dim: int = 5, var: str = "t") -> FpModule:
    m = random_endo(rng, max_dim)
    M = FpModule.from_endo(m, var)
    return _scramble(rng, M)


def random_fpmodule(rng: random.Random, max_dim: int = 4, max_free: int = 2, var: str = "t") -> FpModule:
    """Cyclic torsion summands of total degree <= max_dim plus free rank <= max_free, scrambled."""
    ring = (var,)
    parts, dim = [], 0
    budget = rng.randint(0, max_dim)
    while dim < budget:
        p = random_monic(rng, budget - dim, var)
        parts.append(FpModule.cyclic(p, ring))
        dim += p.degree()
    free = rng.randint(0, max_free)
    if free:
        parts.append(FpModule.free(free, ring))
    if not parts:
        return FpModule.zero(ring)
    M = FpModule.direct_sum(*parts)
    return _scramble(rng, M)


def random_spec(rng: random.Random, max_deg: int = 3, source: str = "t", target: str = "s") -> RingMap:
    return RingMap((source,), (target,), (random_poly(rng, max_deg, target),))


def random_poset(rng: random.Random, n: int, name: str = "", density: float = 0.4) -> FinCat:
    """Random partial order on ``0..n-1`` compatible with the natural order."""
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    closure = {(i, i) for i in range(n)} | rel
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return poset(range(n), lambda a, b: (a, b) in closure, name=name or f"P{n}")


def random_poset_functor(rng: random.Random, max_a: int = 4, max_b: int = 4, tries: int = 200) -> FunctorData:
    """A monotone map between random posets with at most ``max_a``/``max_b`` elements."""
    while True:
        A = random_poset(rng, rng.randint(1, max_a), "A")
        B = random_poset(rng, rng.randint(1, max_b), "B")
        for _ in range(tries):
            f = {a: rng.choice(B.objects) for a in A.objects}
            if all(B.hom(f[A.src[m]], f[A.dst[m]]) for m in A.morphisms):
                return FunctorData(A, B, f, {m: (f[m[0]], f[m[1]]) for m in A.morphisms}, name="u")


def poset_functor_corpus(size: int = 20, seed: int = 0) -> list:
    """Fixed corpus of monotone maps used for the Der4 comma squares."""
    rng = rng_for(seed, "poset-functors")
    return [random_poset_functor(rng) for _ in range(size)]
