"""Comma categories, squares with a transformation, and their cell categories.

A square is drawn as::

    D --top--> A
    |          |
   left   =>   u
    v          v
    B ---v---> C

with ``alpha : u o top => v o left``.  For ``a`` in A, ``b`` in B and
``gamma : u(a) -> v(b)`` the cell ``(a/D/b)_gamma`` has objects
``(d, f : a -> top(d), g : left(d) -> b)`` with
``v(g) o alpha_d o u(f) = gamma``, and morphisms ``h : d -> d'`` with
``top(h) o f = f'`` and ``g' o left(h) = g``.  The square is homotopy exact
when every cell is homotopy contractible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .category import CategoryError, FinCat, FunctorData, NatTransData, _name, point, terminal, to_terminal
from .contract import Certificate, Verdict, contractibility_certificate


def comma_category(u: FunctorData, b, side: str = "over") -> tuple:
    """``(u/b)`` (``side='over'``) or ``(b/u)`` (``side='under'``) with its projection.

    Over: objects ``(a, f : u(a) -> b)``, morphisms ``h : a -> a'`` with
    ``f' o u(h) = f``.  Under: objects ``(a, f : b -> u(a))``, morphisms
    with ``u(h) o f = f'``.
    """
    A, B = u.source, u.target
    if b not in B:
        raise CategoryError(f"{b!r} is not an object of {B.name}")
    if side == "over":
        objects = [(a, f) for a in A.objects for f in B.hom(u.ob(a), b)]
        ok = lambda x, y, h: B.compose(y[1], u.mor(h)) == x[1]
    elif side == "under":
        objects = [(a, f) for a in A.objects for f in B.hom(b, u.ob(a))]
        ok = lambda x, y, h: B.compose(u.mor(h), x[1]) == y[1]
    else:
        raise ValueError("side must be 'over' or 'under'")
    arrows = [
        ((x, y, h), x, y)
        for x in objects
        for y in objects
        for h in A.hom(x[0], y[0])
        if ok(x, y, h)
    ]
    sym = "/" if side == "over" else "\\"
    comma = FinCat.build(
        objects,
        arrows,
        lambda x: (x, x, A.id(x[0])),
        lambda g, f: (f[0], g[1], A.compose(g[2], f[2])),
        name=f"({u.name}{sym}{_name(b)})",
        validate=False,
    )
    pr = FunctorData(comma, A, {x: x[0] for x in objects}, {m: m[2] for m in comma.morphisms}, name="pr", validate=False)
    return comma, pr


@dataclass(frozen=True, eq=False)
class SquareData:
    top: FunctorData
    left: FunctorData
    right: FunctorData
    bottom: FunctorData
    alpha: NatTransData
    name: str = ""

    def __post_init__(self):
        if self.top.source is not self.left.source:
            raise CategoryError("top and left must share their source D")
        if self.right.source is not self.top.target or self.bottom.source is not self.left.target:
            raise CategoryError("right/bottom must start where top/left end")
        if self.right.target is not self.bottom.target:
            raise CategoryError("right and bottom must share their target C")
        C = self.right.target
        for d in self.top.source.objects:
            c = self.alpha.components.get(d)
            if c is None or C.src[c] != self.right.ob(self.top.ob(d)) or C.dst[c] != self.bottom.ob(self.left.ob(d)):
                raise CategoryError(f"alpha component at {d!r} does not fill the square")
        for m in self.top.source.morphisms:
            s, t = self.top.source.src[m], self.top.source.dst[m]
            lhs = C.compose(self.alpha.components[t], self.right.mor(self.top.mor(m)))
            rhs = C.compose(self.bottom.mor(self.left.mor(m)), self.alpha.components[s])
            if lhs != rhs:
                raise CategoryError(f"alpha is not natural at {m!r}")

    @property
    def D(self) -> FinCat:
        return self.top.source

    @property
    def A(self) -> FinCat:
        return self.top.target

    @property
    def B(self) -> FinCat:
        return self.left.target

    @property
    def C(self) -> FinCat:
        return self.right.target


def triple_comma(sq: SquareData, a, b, gamma) -> FinCat:
    A, B, C, D = sq.A, sq.B, sq.C, sq.D
    if a not in A or b not in B:
        raise CategoryError("a, b must be objects of A, B")
    if C.src.get(gamma) != sq.right.ob(a) or C.dst.get(gamma) != sq.bottom.ob(b):
        raise CategoryError("gamma must be a morphism u(a) -> v(b)")
    objects = []
    for d in D.objects:
        for f in A.hom(a, sq.top.ob(d)):
            uf = sq.right.mor(f)
            for g in B.hom(sq.left.ob(d), b):
                if C.compose_path(sq.bottom.mor(g), sq.alpha.components[d], uf) == gamma:
                    objects.append((d, f, g))
    arrows = []
    for x in objects:
        for y in objects:
            for h in D.hom(x[0], y[0]):
                if A.compose(sq.top.mor(h), x[1]) == y[1] and B.compose(y[2], sq.left.mor(h)) == x[2]:
                    arrows.append(((x, y, h), x, y))
    return FinCat.build(
        objects,
        arrows,
        lambda x: (x, x, D.id(x[0])),
        lambda g, f: (f[0], g[1], D.compose(g[2], f[2])),
        name=f"({_name(a)}/D/{_name(b)})_{_name(gamma)}",
        validate=False,
    )


def comma_square(u: FunctorData, b) -> SquareData:
    """The pointwise Kan-extension square ``(u/b) -> A``, ``(u/b) -> e``, ``u``, ``b : e -> B``."""
    comma, pr = comma_category(u, b, "over")
    E = terminal()
    pi = to_terminal(comma, E)
    bb = point(u.target, b, E)
    alpha = NatTransData(pr.then(u), pi.then(bb), {x: x[1] for x in comma.objects})
    return SquareData(pr, pi, u, bb, alpha, name=f"comma({u.name}/{_name(b)})")


class SquareVerdict(str, Enum):
    CERTIFIED = "Certified"
    INCONCLUSIVE = "Inconclusive"
    REFUTED_BY_EMPTY = "RefutedByEmpty"
    REFUTED = "Refuted"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class Cell:
    a: object
    b: object
    gamma: object
    size: tuple
    certificate: Certificate

    def to_json(self) -> dict:
        return {
            "a": _name(self.a),
            "b": _name(self.b),
            "gamma": _name(self.gamma),
            "objects": self.size[0],
            "morphisms": self.size[1],
            "certificate": self.certificate.to_json(),
        }


@dataclass
class SquareReport:
    verdict: SquareVerdict
    cells: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "note": self.note, "cells": [c.to_json() for c in self.cells]}

    def table(self) -> str:
        lines = [f"{'a':>12} {'b':>12} {'gamma':>16}  size      certificate"]
        for c in self.cells:
            lines.append(
                f"{_name(c.a):>12} {_name(c.b):>12} {_name(c.gamma):>16}  {c.size[0]:>3}/{c.size[1]:<4}  {c.certificate.verdict.value}"
            )
        lines.append(f"verdict: {self.verdict.value}" + (f" ({self.note})" if self.note else ""))
        return "\n".join(lines)


def exact_square_check(sq: SquareData, budget: int = 20_000, strategies=None) -> SquareReport:
    """Certify every cell ``(a/D/b)_gamma``.

    ``budget`` bounds the total number of cell objects enumerated.
    Certified iff every cell gets a positive certificate; refuted as soon
    as some cell is empty, disconnected or has a nerve with Euler
    characteristic different from 1; otherwise inconclusive.
    """
    cells, spent = [], 0
    for a in sq.A.objects:
        for b in sq.B.objects:
            for gamma in sq.C.hom(sq.right.ob(a), sq.bottom.ob(b)):
                cat = triple_comma(sq, a, b, gamma)
                spent += len(cat.objects)
                if spent > budget:
                    return SquareReport(SquareVerdict.BUDGET_EXCEEDED, cells, note=f"budget {budget} cell objects")
                cert = contractibility_certificate(cat, strategies=strategies)
                cells.append(Cell(a, b, gamma, cat.size(), cert))
    return SquareReport(_overall(cells), cells)


def _overall(cells: list) -> SquareVerdict:
    verdicts = [c.certificate.verdict for c in cells]
    if any(v is Verdict.EMPTY for v in verdicts):
        return SquareVerdict.REFUTED_BY_EMPTY
    if any(v.refutes for v in verdicts):
        return SquareVerdict.REFUTED
    if all(v.certifies for v in verdicts):
        return SquareVerdict.CERTIFIED
    return SquareVerdict.INCONCLUSIVE


class SieveKind(str, Enum):
    SIEVE = "Sieve"
    COSIEVE = "Cosieve"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass
class SieveResult:
    kind: SieveKind
    reason: str = ""


def sieve_cosieve(u: FunctorData) -> SieveResult:
    """Classify a fully faithful, injective-on-objects functor.

    Sieve: every morphism ``c -> u(a)`` has its source in the image.
    Cosieve: every morphism ``u(a) -> c`` has its target in the image.
    """
    if not u.is_injective_on_objects():
        return SieveResult(SieveKind.NEITHER, "not injective on objects")
    if not u.is_fully_faithful():
        return SieveResult(SieveKind.NEITHER, "not fully faithful")
    T = u.target
    image = set(u.obj_map.values())
    sieve = all(T.src[m] in image for m in T.morphisms if T.dst[m] in image)
    cosieve = all(T.dst[m] in image for m in T.morphisms if T.src[m] in image)
    kind = {
        (True, True): SieveKind.BOTH,
        (True, False): SieveKind.SIEVE,
        (False, True): SieveKind.COSIEVE,
        (False, False): SieveKind.NEITHER,
    }[(sieve, cosieve)]
    return SieveResult(kind, "" if kind is not SieveKind.NEITHER else "image not closed under incoming or outgoing morphisms")
