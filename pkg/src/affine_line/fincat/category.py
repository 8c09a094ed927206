"""Explicit finite categories, functors and natural transformations.

Morphisms are arbitrary hashable labels.  Builders use ``(src, dst, data)``
triples so labels are globally unique; composition is stored as a table
over composable pairs only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

MAX_OBJECTS = 64
MAX_MORPHISMS = 4096


class CategoryError(ValueError):
    pass


class FinCat:
    """A finite category with a total composition table on composable pairs.

    ``compose(g, f)`` is ``g o f`` (first ``f``, then ``g``).
    """

    def __init__(
        self,
        objects: Sequence[Hashable],
        morphisms: Mapping[Hashable, tuple],
        identities: Mapping[Hashable, Hashable],
        table: Mapping[tuple, Hashable],
        name: str = "",
        validate: bool = True,
        max_objects: int = MAX_OBJECTS,
        max_morphisms: int = MAX_MORPHISMS,
    ):
        if len(objects) > max_objects or len(morphisms) > max_morphisms:
            raise CategoryError(
                f"category too large ({len(objects)} objects, {len(morphisms)} morphisms; "
                f"caps {max_objects}/{max_morphisms})"
            )
        self.name = name
        self.objects = tuple(objects)
        self._obj_set = frozenset(self.objects)
        self.src = {m: s for m, (s, _) in morphisms.items()}
        self.dst = {m: t for m, (_, t) in morphisms.items()}
        self.morphisms = tuple(morphisms)
        self.identities = dict(identities)
        self.table = dict(table)
        homs: dict = {(a, b): [] for a in self.objects for b in self.objects}
        for m in self.morphisms:
            homs[(self.src[m], self.dst[m])].append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        if validate:
            self.validate()

    # -- construction -------------------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Iterable[Hashable],
        arrows: Iterable[tuple],
        identity: Callable[[Hashable], Hashable],
        compose: Callable[[Hashable, Hashable], Hashable],
        name: str = "",
        **kw,
    ) -> "FinCat":
        """``arrows`` are ``(label, src, dst)``; identities must be among them."""
        objects = list(objects)
        morphisms = {m: (s, t) for m, s, t in arrows}
        ids = {a: identity(a) for a in objects}
        by_src: dict = {}
        for m, (s, _) in morphisms.items():
            by_src.setdefault(s, []).append(m)
        table = {}
        for f, (_, t) in morphisms.items():
            for g in by_src.get(t, ()):
                table[(g, f)] = compose(g, f)
        return cls(objects, morphisms, ids, table, name=name, **kw)

    # -- queries ------------------------------------------------------------

    def __contains__(self, obj) -> bool:
        return obj in self._obj_set

    def hom(self, a, b) -> tuple:
        return self._homs[(a, b)]

    def id(self, a):
        return self.identities[a]

    def compose(self, g, f):
        try:
            return self.table[(g, f)]
        except KeyError:
            raise CategoryError(f"{g!r} and {f!r} are not composable") from None

    def compose_path(self, *ms):
        """``ms[0] o ms[1] o ...``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def is_identity(self, m) -> bool:
        return self.identities[self.src[m]] == m

    def non_identity(self) -> list:
        return [m for m in self.morphisms if not self.is_identity(m)]

    def size(self) -> tuple:
        return len(self.objects), len(self.morphisms)

    def validate(self):
        for a, m in self.identities.items():
            if self.src.get(m) != a or self.dst.get(m) != a:
                raise CategoryError(f"identity of {a!r} has the wrong frame")
        for m in self.morphisms:
            s, t = self.src[m], self.dst[m]
            if s not in self or t not in self:
                raise CategoryError(f"morphism {m!r} has an unknown endpoint")
            if self.table.get((self.identities[t], m)) != m or self.table.get((m, self.identities[s])) != m:
                raise CategoryError(f"identity law fails at {m!r}")
        for (g, f), h in self.table.items():
            if self.dst[f] != self.src[g]:
                raise CategoryError(f"table entry for non-composable pair {(g, f)!r}")
            if h not in self.src or self.src[h] != self.src[f] or self.dst[h] != self.dst[g]:
                raise CategoryError(f"{g!r} o {f!r} has the wrong frame")
        for f in self.morphisms:
            for g in self._out(f):
                if (g, f) not in self.table:
                    raise CategoryError(f"composite {g!r} o {f!r} missing from the table")
        for f in self.morphisms:
            for g in self._out(f):
                gf = self.table[(g, f)]
                for h in self._out(g):
                    if self.table[(h, gf)] != self.table[(self.table[(h, g)], f)]:
                        raise CategoryError(f"associativity fails at {(h, g, f)!r}")
        expected = sum(len(self._out(f)) for f in self.morphisms)
        if expected != len(self.table):
            raise CategoryError("composition table is not total on composable pairs")

    def _out(self, f) -> list:
        t = self.dst[f]
        return [g for b in self.objects for g in self._homs[(t, b)]]

    # -- derived categories -------------------------------------------------

    def opposite(self) -> "FinCat":
        morphisms = {m: (self.dst[m], self.src[m]) for m in self.morphisms}
        table = {(f, g): h for (g, f), h in self.table.items()}
        return FinCat(self.objects, morphisms, self.identities, table, name=f"{self.name}^op", validate=False, **self._caps())

    def full_subcategory(self, objects: Iterable[Hashable], name: str = "") -> "FinCat":
        keep = [a for a in self.objects if a in set(objects)]
        ks = set(keep)
        morphisms = {m: (self.src[m], self.dst[m]) for m in self.morphisms if self.src[m] in ks and self.dst[m] in ks}
        table = {(g, f): h for (g, f), h in self.table.items() if g in morphisms and f in morphisms}
        ids = {a: self.identities[a] for a in keep}
        return FinCat(keep, morphisms, ids, table, name=name or f"{self.name}|sub", validate=False, **self._caps())

    def _caps(self) -> dict:
        # categories derived from an accepted one inherit its size allowance
        return {
            "max_objects": max(MAX_OBJECTS, len(self.objects)),
            "max_morphisms": max(MAX_MORPHISMS, len(self.morphisms)),
        }

    def components(self) -> list:
        """Connected components as lists of objects (in object order)."""
        parent = {a: a for a in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in self.morphisms:
            ra, rb = find(self.src[m]), find(self.dst[m])
            if ra != rb:
                parent[ra] = rb
        groups: dict = {}
        for a in self.objects:
            groups.setdefault(find(a), []).append(a)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_initial(self, a) -> bool:
        return all(len(self.hom(a, b)) == 1 for b in self.objects)

    def is_terminal(self, a) -> bool:
        return all(len(self.hom(b, a)) == 1 for b in self.objects)

    def nerve_euler_characteristic(self, max_chains: int = 200_000) -> int | None:
        """Euler characteristic of the nerve, when it is finite-dimensional.

        Counts chains of composable non-identity morphisms.  Returns ``None``
        if some non-identity morphism is an endomorphism or an iso (the
        nerve is then infinite-dimensional) or the count exceeds ``max_chains``.
        """
        nonid = self.non_identity()
        if any(self.src[m] == self.dst[m] for m in nonid):
            return None
        for m in nonid:
            for g in self.hom(self.dst[m], self.src[m]):
                if self.compose(g, m) == self.id(self.src[m]):
                    return None
        nonid_from = {a: [m for m in nonid if self.src[m] == a] for a in self.objects}
        # chains ending at each object, by length
        chi = len(self.objects)
        layer = {a: 1 for a in self.objects}  # chains of length 0 ending at a
        sign, total = -1, len(self.objects)
        while True:
            nxt: dict = {}
            for a, count in layer.items():
                for m in nonid_from[a]:
                    nxt[self.dst[m]] = nxt.get(self.dst[m], 0) + count
            n = sum(nxt.values())
            if n == 0:
                return chi
            total += n
            if total > max_chains:
                return None
            chi += sign * n
            sign = -sign
            layer = nxt

    def to_json(self) -> dict:
        names = {m: _name(m) for m in self.morphisms}
        return {
            "name": self.name,
            "objects": [_name(a) for a in self.objects],
            "morphisms": [{"name": names[m], "src": _name(self.src[m]), "dst": _name(self.dst[m])} for m in self.morphisms],
            "compose": [[names[g], names[f], names[h]] for (g, f), h in sorted(self.table.items(), key=lambda kv: (names[kv[0][0]], names[kv[0][1]]))],
            "identities": [names[self.identities[a]] for a in self.objects],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinCat":
        objects = list(data["objects"])
        morphisms = {m["name"]: (m["src"], m["dst"]) for m in data["morphisms"]}
        ids = {a: i for a, i in zip(objects, data["identities"])}
        table = {(g, f): h for g, f, h in data["compose"]}
        return cls(objects, morphisms, ids, table, name=data.get("name", ""))

    def __repr__(self):
        return f"FinCat({self.name or '?'}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def _name(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(_name(y) for y in x) + ")"
    return str(x)


# ---------------------------------------------------------------------------
# builders


def poset(elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool], name: str = "", **kw) -> FinCat:
    """Thin category of a finite preorder; the morphism ``a -> b`` is ``(a, b)``."""
    els = list(elements)
    arrows = [((a, b), a, b) for a in els for b in els if leq(a, b)]
    return FinCat.build(els, arrows, lambda a: (a, a), lambda g, f: (f[0], g[1]), name=name, **kw)


def discrete(objects: Iterable[Hashable], name: str = "") -> FinCat:
    return poset(objects, lambda a, b: a == b, name=name or "discrete")


def terminal() -> FinCat:
    """The one-object, one-morphism category ``e``."""
    return discrete(["*"], name="e")


def empty() -> FinCat:
    return discrete([], name="empty")


def arrow() -> FinCat:
    """``[1] = {0 -> 1}``."""
    return poset([0, 1], lambda a, b: a <= b, name="[1]")


def chain(n: int) -> FinCat:
    """``[n] = {0 -> 1 -> ... -> n}``."""
    return poset(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def square() -> FinCat:
    """``[1] x [1]`` with objects ``(i, j)``."""
    els = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return poset(els, lambda a, b: a[0] <= b[0] and a[1] <= b[1], name="square")


def corner() -> FinCat:
    """The span shape ``(1,0) <- (0,0) -> (0,1)``: the square without ``(1,1)``."""
    els = [(0, 0), (1, 0), (0, 1)]
    return poset(els, lambda a, b: a[0] <= b[0] and a[1] <= b[1], name="corner")


def product(C: FinCat, D: FinCat, name: str = "") -> FinCat:
    objects = [(a, b) for a in C.objects for b in D.objects]
    arrows = [((f, g), (C.src[f], D.src[g]), (C.dst[f], D.dst[g])) for f in C.morphisms for g in D.morphisms]
    return FinCat.build(
        objects,
        arrows,
        lambda ab: (C.id(ab[0]), D.id(ab[1])),
        lambda g, f: (C.compose(g[0], f[0]), D.compose(g[1], f[1])),
        name=name or f"{C.name}x{D.name}",
    )


def disjoint_union(C: FinCat, D: FinCat, name: str = "") -> FinCat:
    """Objects and morphisms tagged ``(0, x)`` and ``(1, x)``."""
    objects = [(0, a) for a in C.objects] + [(1, b) for b in D.objects]
    arrows = [((0, f), (0, C.src[f]), (0, C.dst[f])) for f in C.morphisms]
    arrows += [((1, g), (1, D.src[g]), (1, D.dst[g])) for g in D.morphisms]
    cats = (C, D)
    return FinCat.build(
        objects,
        arrows,
        lambda o: (o[0], cats[o[0]].id(o[1])),
        lambda g, f: (g[0], cats[g[0]].compose(g[1], f[1])),
        name=name or f"{C.name}+{D.name}",
    )


def monoid(elements: Sequence[Hashable], mult: Callable, unit: Hashable, name: str = "") -> FinCat:
    """One-object category ``*`` of a finite monoid; morphism ``m`` is ``('*', '*', m)``."""
    arrows = [(("*", "*", m), "*", "*") for m in elements]
    return FinCat.build(
        ["*"], arrows, lambda _: ("*", "*", unit), lambda g, f: ("*", "*", mult(g[2], f[2])), name=name
    )


def capped_nat(k: int) -> FinCat:
    """``{0..k}`` under addition capped at ``k``: a finite stand-in for the monoid N."""
    return monoid(list(range(k + 1)), lambda a, b: min(a + b, k), 0, name=f"N<={k}")


# ---------------------------------------------------------------------------
# functors and transformations


@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCat
    target: FinCat
    obj_map: Mapping
    mor_map: Mapping
    name: str = ""
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.validate:
            self.check()

    @classmethod
    def build(cls, source: FinCat, target: FinCat, on_obj: Callable, on_mor: Callable, name: str = "") -> "FunctorData":
        return cls(
            source,
            target,
            {a: on_obj(a) for a in source.objects},
            {m: on_mor(m) for m in source.morphisms},
            name=name,
        )

    def check(self):
        S, T = self.source, self.target
        for a in S.objects:
            if a not in self.obj_map or self.obj_map[a] not in T:
                raise CategoryError(f"{self.name}: object {a!r} not mapped into the target")
        for m in S.morphisms:
            fm = self.mor_map.get(m)
            if fm is None or fm not in T.src:
                raise CategoryError(f"{self.name}: morphism {m!r} not mapped to a morphism")
            if T.src[fm] != self.obj_map[S.src[m]] or T.dst[fm] != self.obj_map[S.dst[m]]:
                raise CategoryError(f"{self.name}: image of {m!r} has the wrong frame")
        for a in S.objects:
            if self.mor_map[S.id(a)] != T.id(self.obj_map[a]):
                raise CategoryError(f"{self.name}: identity of {a!r} not preserved")
        for (g, f), h in S.table.items():
            if T.compose(self.mor_map[g], self.mor_map[f]) != self.mor_map[h]:
                raise CategoryError(f"{self.name}: composition {g!r} o {f!r} not preserved")

    def __call__(self, x):
        """Apply to an object or a morphism of the source."""
        if x in self.obj_map and x in self.source:
            return self.obj_map[x]
        return self.mor_map[x]

    def ob(self, a):
        return self.obj_map[a]

    def mor(self, m):
        return self.mor_map[m]

    def then(self, other: "FunctorData", name: str = "") -> "FunctorData":
        """The composite ``other o self``."""
        if other.source is not self.target:
            raise CategoryError("functors are not composable")
        return FunctorData(
            self.source,
            other.target,
            {a: other.obj_map[b] for a, b in self.obj_map.items()},
            {m: other.mor_map[n] for m, n in self.mor_map.items()},
            name=name or f"{other.name}.{self.name}",
            validate=False,
        )

    def opposite(self, source_op: FinCat, target_op: FinCat) -> "FunctorData":
        return FunctorData(source_op, target_op, self.obj_map, self.mor_map, name=f"{self.name}^op", validate=False)

    def is_fully_faithful(self) -> bool:
        S, T = self.source, self.target
        for a in S.objects:
            for b in S.objects:
                images = [self.mor_map[m] for m in S.hom(a, b)]
                if len(set(images)) != len(images) or len(images) != len(T.hom(self.obj_map[a], self.obj_map[b])):
                    return False
        return True

    def is_injective_on_objects(self) -> bool:
        return len(set(self.obj_map.values())) == len(self.obj_map)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.name,
            "target": self.target.name,
            "objects": {_name(a): _name(b) for a, b in self.obj_map.items()},
            "morphisms": {_name(a): _name(b) for a, b in self.mor_map.items()},
        }


def identity_functor(C: FinCat) -> FunctorData:
    return FunctorData(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms}, name="id", validate=False)


def to_terminal(C: FinCat, E: FinCat | None = None) -> FunctorData:
    E = E or terminal()
    (pt,) = E.objects
    return FunctorData(C, E, {a: pt for a in C.objects}, {m: E.id(pt) for m in C.morphisms}, name="pi")


def point(C: FinCat, a, E: FinCat | None = None) -> FunctorData:
    """The functor ``e -> C`` picking out ``a``."""
    E = E or terminal()
    (pt,) = E.objects
    return FunctorData(E, C, {pt: a}, {E.id(pt): C.id(a)}, name=f"pt({_name(a)})")


def inclusion(S: FinCat, C: FinCat, name: str = "incl") -> FunctorData:
    return FunctorData(S, C, {a: a for a in S.objects}, {m: m for m in S.morphisms}, name=name)


@dataclass(frozen=True, eq=False)
class NatTransData:
    """Components ``F(a) -> G(a)`` for parallel functors ``F, G``."""

    source: FunctorData
    target: FunctorData
    components: Mapping
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.validate:
            self.check()

    def check(self):
        F, G = self.source, self.target
        if F.source is not G.source or F.target is not G.target:
            raise CategoryError("transformation between non-parallel functors")
        T = F.target
        for a in F.source.objects:
            c = self.components.get(a)
            if c is None or T.src.get(c) != F.ob(a) or T.dst.get(c) != G.ob(a):
                raise CategoryError(f"component at {a!r} has the wrong frame")
        for m in F.source.morphisms:
            a, b = F.source.src[m], F.source.dst[m]
            if T.compose(self.components[b], F.mor(m)) != T.compose(G.mor(m), self.components[a]):
                raise CategoryError(f"naturality fails at {m!r}")

    def __getitem__(self, a):
        return self.components[a]


def identity_transformation(F: FunctorData) -> NatTransData:
    return NatTransData(F, F, {a: F.target.id(F.ob(a)) for a in F.source.objects})


def all_functors(C: FinCat, D: FinCat, limit: int = 10_000) -> Iterable[FunctorData]:
    """Brute-force enumeration of functors (small categories only)."""
    count = 0
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        om = dict(zip(C.objects, objs))
        choices = [D.hom(om[C.src[m]], om[C.dst[m]]) for m in C.morphisms]
        for mors in itertools.product(*choices):
            count += 1
            if count > limit:
                return
            mm = dict(zip(C.morphisms, mors))
            try:
                yield FunctorData(C, D, om, mm)
            except CategoryError:
                continue
