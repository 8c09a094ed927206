"""Contractibility certificates and adjoint search for finite categories.

Certificates are sufficient conditions only.  Positive verdicts: an
initial object, a terminal object, or a zigzag of adjunctions ending in a
category with one of those.  Negative verdicts (sound refutations): the
category is empty, disconnected, or its nerve has Euler characteristic
different from 1.  Anything else is ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .category import (
    CategoryError,
    FinCat,
    FunctorData,
    NatTransData,
    _name,
    identity_functor,
    inclusion,
)


class Verdict(str, Enum):
    INITIAL = "ContractibleByInitial"
    TERMINAL = "ContractibleByTerminal"
    ZIGZAG = "ContractibleByAdjunctionZigzag"
    EMPTY = "Empty"
    DISCONNECTED = "Disconnected"
    EULER = "EulerObstruction"
    UNKNOWN = "Unknown"

    @property
    def certifies(self) -> bool:
        return self in (Verdict.INITIAL, Verdict.TERMINAL, Verdict.ZIGZAG)

    @property
    def refutes(self) -> bool:
        return self in (Verdict.EMPTY, Verdict.DISCONNECTED, Verdict.EULER)


@dataclass(frozen=True, eq=False)
class Adjunction:
    """``left -| right`` with ``unit : Id => right o left`` and ``counit : left o right => Id``."""

    left: FunctorData
    right: FunctorData
    unit: NatTransData
    counit: NatTransData

    def is_valid(self) -> bool:
        return check_adjunction(self.left, self.right, self.unit, self.counit)


@dataclass
class ZigzagStep:
    adjunction: Adjunction
    source: FinCat  # the category we came from
    target: FinCat  # the category we moved to


@dataclass
class Certificate:
    verdict: Verdict
    witness: object = None
    steps: list = field(default_factory=list)
    detail: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = _name(self.witness) if not isinstance(self.witness, int) else self.witness
        if self.steps:
            out["zigzag"] = [
                {"from": s.source.name, "to": s.target.name, "left": s.adjunction.left.name, "right": s.adjunction.right.name}
                for s in self.steps
            ]
        if self.detail:
            out["detail"] = self.detail
        return out


# ---------------------------------------------------------------------------
# adjunctions


def check_adjunction(F: FunctorData, G: FunctorData, unit, counit) -> bool:
    """Both triangle identities, plus frames and naturality of unit and counit."""
    try:
        A, B = F.source, F.target
        if G.source is not B or G.target is not A:
            return False
        F.check()
        G.check()
        eta = unit.components if isinstance(unit, NatTransData) else unit
        eps = counit.components if isinstance(counit, NatTransData) else counit
        NatTransData(identity_functor(A), F.then(G), eta)
        NatTransData(G.then(F), identity_functor(B), eps)
        for a in A.objects:
            if B.compose(eps[F.ob(a)], F.mor(eta[a])) != B.id(F.ob(a)):
                return False
        for b in B.objects:
            if A.compose(G.mor(eps[b]), eta[G.ob(b)]) != A.id(G.ob(b)):
                return False
        return True
    except (CategoryError, KeyError):
        return False


def _universal_arrow(G: FunctorData, a):
    A, B = G.target, G.source
    for b in B.objects:
        for eta in A.hom(a, G.ob(b)):
            ok = True
            for b2 in B.objects:
                target = A.hom(a, G.ob(b2))
                hits = {A.compose(G.mor(g), eta) for g in B.hom(b, b2)}
                if len(hits) != len(target) or len(B.hom(b, b2)) != len(target):
                    ok = False
                    break
            if ok:
                return b, eta
    return None


def find_left_adjoint(G: FunctorData, name: str = "") -> Adjunction | None:
    """Left adjoint of ``G : B -> A`` via universal arrows ``a -> G(b)``, if one exists."""
    A, B = G.target, G.source
    obj, unit = {}, {}
    for a in A.objects:
        found = _universal_arrow(G, a)
        if found is None:
            return None
        obj[a], unit[a] = found
    mor = {}
    for h in A.morphisms:
        s, t = A.src[h], A.dst[h]
        want = A.compose(unit[t], h)
        match = [g for g in B.hom(obj[s], obj[t]) if A.compose(G.mor(g), unit[s]) == want]
        if len(match) != 1:
            return None
        mor[h] = match[0]
    F = FunctorData(A, B, obj, mor, name=name or f"L({G.name})")
    counit = {}
    for b in B.objects:
        gb = G.ob(b)
        match = [e for e in B.hom(obj[gb], b) if A.compose(G.mor(e), unit[gb]) == A.id(gb)]
        if len(match) != 1:
            return None
        counit[b] = match[0]
    return Adjunction(
        F,
        G,
        NatTransData(identity_functor(A), F.then(G), unit),
        NatTransData(G.then(F), identity_functor(B), counit),
    )


def find_right_adjoint(F: FunctorData, name: str = "") -> Adjunction | None:
    """Right adjoint of ``F : A -> B`` (dual search on opposite categories)."""
    A, B = F.source, F.target
    Aop, Bop = A.opposite(), B.opposite()
    found = find_left_adjoint(F.opposite(Aop, Bop))
    if found is None:
        return None
    L = found.left
    G = FunctorData(B, A, L.obj_map, L.mor_map, name=name or f"R({F.name})")
    return Adjunction(
        F,
        G,
        NatTransData(identity_functor(A), F.then(G), found.counit.components),
        NatTransData(G.then(F), identity_functor(B), found.unit.components),
    )


# ---------------------------------------------------------------------------
# certificates


DEFAULT_STRATEGIES = ("initial", "terminal", "zigzag")


def _initial(C: FinCat):
    return next((a for a in C.objects if C.is_initial(a)), None)


def _terminal(C: FinCat):
    return next((a for a in C.objects if C.is_terminal(a)), None)


def _candidate_subcategories(C: FinCat) -> list:
    """Up- and down-closures of single objects (proper, nonempty, deduplicated)."""
    seen, out = set(), []
    for a in C.objects:
        for objs in (
            [b for b in C.objects if C.hom(a, b)],
            [b for b in C.objects if C.hom(b, a)],
        ):
            key = frozenset(objs)
            if 0 < len(key) < len(C.objects) and key not in seen:
                seen.add(key)
                out.append(objs)
    return out


def _adjunction_moves(C: FinCat, hints: Sequence[FunctorData]) -> Iterable[ZigzagStep]:
    for h in hints:
        if h.source is C:
            for adj in (find_left_adjoint(h), find_right_adjoint(h)):
                if adj is not None:
                    yield ZigzagStep(adj, C, h.target)
        elif h.target is C:
            for adj in (find_left_adjoint(h), find_right_adjoint(h)):
                if adj is not None:
                    yield ZigzagStep(adj, C, h.source)
    for objs in _candidate_subcategories(C):
        S = C.full_subcategory(objs, name=f"{C.name}|{_name(objs[0])}..")
        i = inclusion(S, C)
        for adj in (find_left_adjoint(i), find_right_adjoint(i)):
            if adj is not None:
                yield ZigzagStep(adj, C, S)


def _zigzag(C: FinCat, hints, depth: int):
    for step in _adjunction_moves(C, hints):
        D = step.target
        a = _initial(D)
        if a is None:
            a = _terminal(D)
        if a is not None:
            return [step], a
        if depth > 1:
            found = _zigzag(D, hints, depth - 1)
            if found is not None:
                return [step] + found[0], found[1]
    return None


def contractibility_certificate(
    C: FinCat,
    strategies: Sequence[str] | None = None,
    hints: Sequence[FunctorData] = (),
    depth: int = 2,
    refutations: bool = True,
) -> Certificate:
    """First applicable verdict among ``strategies`` (default: initial, terminal, zigzag).

    ``hints`` are extra functors into or out of ``C`` (or out of
    intermediate categories) whose adjoints are tried before the automatic
    up-/down-closure candidates.
    """
    strategies = DEFAULT_STRATEGIES if strategies is None else tuple(strategies)
    if not C.objects:
        return Certificate(Verdict.EMPTY)
    if refutations and not C.is_connected():
        return Certificate(Verdict.DISCONNECTED, witness=len(C.components()), detail="components")
    for s in strategies:
        if s == "initial":
            a = _initial(C)
            if a is not None:
                return Certificate(Verdict.INITIAL, witness=a)
        elif s == "terminal":
            a = _terminal(C)
            if a is not None:
                return Certificate(Verdict.TERMINAL, witness=a)
        elif s == "zigzag":
            found = _zigzag(C, hints, depth)
            if found is not None:
                steps, a = found
                return Certificate(Verdict.ZIGZAG, witness=a, steps=steps)
        else:
            raise ValueError(f"unknown strategy {s!r}")
    if refutations:
        chi = C.nerve_euler_characteristic()
        if chi is not None and chi != 1:
            return Certificate(Verdict.EULER, witness=chi, detail="nerve Euler characteristic")
    return Certificate(Verdict.UNKNOWN)


def revalidate(C: FinCat, cert: Certificate) -> bool:
    """Independently re-check a certificate's witness."""
    v = cert.verdict
    if v is Verdict.EMPTY:
        return not C.objects
    if v is Verdict.INITIAL:
        return cert.witness in C and C.is_initial(cert.witness)
    if v is Verdict.TERMINAL:
        return cert.witness in C and C.is_terminal(cert.witness)
    if v is Verdict.DISCONNECTED:
        return len(C.components()) == cert.witness > 1
    if v is Verdict.EULER:
        chi = C.nerve_euler_characteristic()
        return chi is not None and chi == cert.witness != 1
    if v is Verdict.ZIGZAG:
        current = C
        for step in cert.steps:
            adj = step.adjunction
            cats = {adj.left.source, adj.left.target}
            if step.source is not current or step.source not in cats or step.target not in cats:
                return False
            if not check_adjunction(adj.left, adj.right, adj.unit, adj.counit):
                return False
            current = step.target
        w = cert.witness
        return w in current and (current.is_initial(w) or current.is_terminal(w))
    return v is Verdict.UNKNOWN
