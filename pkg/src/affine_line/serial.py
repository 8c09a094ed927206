"""JSON encodings of the corpus objects.

Schemas (all polynomials are strings such as ``"3/2*t^2 - 1"``):

* ``fpmodule``  ``{ring: [var], generators: int, relations: [[poly]]}``,
  relations row-wise, one row per generator;
* ``endopair``  ``{dim: int, matrix: [[rational]]}``;
* ``complex``   ``{minDegree: int, dims: [int], differentials: [[[rational]]]}``;
* ``fincat``    ``{objects, morphisms: [{name, src, dst}], compose: [[g, f, g.f]], identities}``;
* ``functor``   ``{source, target, objects: {a: b}, morphisms: {m: n}}``;
* ``square``    ``{categories: {name: fincat}, top, left, right, bottom: functor, alpha: {d: morphism}}``;
* ``spec``      ``{source: [var], target: [var], images: [poly]}``.

Decoders raise :class:`SchemaError` carrying a JSON-path style location.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Mapping

from .derived import ChainComplex, InvalidComplex
from .fincat import CategoryError, FinCat, FunctorData, NatTransData, SquareData
from .modcat import EndoPair, FpModule, RingMap
from .polyalg.poly import Poly


class SchemaError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


def _field(data, key: str, kind, loc: str):
    if not isinstance(data, Mapping):
        raise SchemaError(loc, "expected an object")
    if key not in data:
        raise SchemaError(loc, f"missing field {key!r}")
    value = data[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(f"{loc}.{key}", "expected an integer")
    if kind is not int and not isinstance(value, kind):
        raise SchemaError(f"{loc}.{key}", f"expected {kind.__name__ if isinstance(kind, type) else 'a list'}")
    return value


def _vars(value, loc: str) -> tuple:
    if not all(isinstance(v, str) and v.isidentifier() for v in value):
        raise SchemaError(loc, "variables must be identifier strings")
    return tuple(value)


def _poly(text, ring: tuple, loc: str) -> Poly:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise SchemaError(loc, "expected a polynomial string")
    try:
        return Poly.parse(text, ring)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(loc, str(exc)) from None


def _rational(text, loc: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SchemaError(loc, "expected a rational string")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(loc, f"not a rational: {text!r}") from None


def _rational_str(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# modules


def fpmodule_to_json(M: FpModule) -> dict:
    return {"ring": list(M.ring), "generators": M.generators, "relations": M.presentation.to_strings()}


def fpmodule_from_json(data, loc: str = "$") -> FpModule:
    ring = _vars(_field(data, "ring", list, loc), f"{loc}.ring")
    g = _field(data, "generators", int, loc)
    if g < 0:
        raise SchemaError(f"{loc}.generators", "must be non-negative")
    rels = _field(data, "relations", list, loc)
    if g and len(rels) != g:
        raise SchemaError(f"{loc}.relations", f"expected {g} rows, got {len(rels)}")
    if not g and any(rels):
        raise SchemaError(f"{loc}.relations", "a module without generators has no relations")
    width = len(rels[0]) if rels and isinstance(rels[0], list) else 0
    rows = []
    for i, row in enumerate(rels[:g]):
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(f"{loc}.relations[{i}]", f"expected a row of length {width}")
        rows.append([_poly(x, ring, f"{loc}.relations[{i}][{j}]") for j, x in enumerate(row)])
    return FpModule.from_relations(ring, g, rows)


def endopair_to_json(m: EndoPair) -> dict:
    return {"dim": m.dim, "matrix": [[_rational_str(x) for x in row] for row in m.endo]}


def endopair_from_json(data, loc: str = "$") -> EndoPair:
    n = _field(data, "dim", int, loc)
    rows = _field(data, "matrix", list, loc)
    if n < 0 or len(rows) != n:
        raise SchemaError(f"{loc}.matrix", f"expected {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{loc}.matrix[{i}]", f"expected {n} entries")
        out.append([_rational(x, f"{loc}.matrix[{i}][{j}]") for j, x in enumerate(row)])
    return EndoPair.from_rows(out) if n else EndoPair.zero(0)


def complex_to_json(C: ChainComplex) -> dict:
    return C.to_json()


def complex_from_json(data, loc: str = "$") -> ChainComplex:
    _field(data, "minDegree", int, loc)
    dims = _field(data, "dims", list, loc)
    diffs = _field(data, "differentials", list, loc)
    if len(diffs) != max(len(dims) - 1, 0):
        raise SchemaError(f"{loc}.differentials", f"expected {max(len(dims) - 1, 0)} matrices")
    for k, d in enumerate(diffs):
        if not isinstance(d, list):
            raise SchemaError(f"{loc}.differentials[{k}]", "expected a matrix")
        for i, row in enumerate(d):
            if not isinstance(row, list):
                raise SchemaError(f"{loc}.differentials[{k}][{i}]", "expected a row")
            for j, x in enumerate(row):
                _rational(x, f"{loc}.differentials[{k}][{i}][{j}]")
    try:
        return ChainComplex.from_json(data)
    except (InvalidComplex, ValueError) as exc:
        raise SchemaError(loc, str(exc)) from None


# ---------------------------------------------------------------------------
# categories


def fincat_to_json(C: FinCat) -> dict:
    return C.to_json()


def fincat_from_json(data, loc: str = "$") -> FinCat:
    objects = _field(data, "objects", list, loc)
    morphisms = _field(data, "morphisms", list, loc)
    for i, m in enumerate(morphisms):
        for key in ("name", "src", "dst"):
            _field(m, key, str, f"{loc}.morphisms[{i}]")
        for key in ("src", "dst"):
            if m[key] not in objects:
                raise SchemaError(f"{loc}.morphisms[{i}].{key}", f"unknown object {m[key]!r}")
    ids = _field(data, "identities", list, loc)
    if len(ids) != len(objects):
        raise SchemaError(f"{loc}.identities", "one identity per object")
    for i, c in enumerate(_field(data, "compose", list, loc)):
        if not (isinstance(c, list) and len(c) == 3):
            raise SchemaError(f"{loc}.compose[{i}]", "expected [g, f, g.f]")
    try:
        return FinCat.from_json(data)
    except CategoryError as exc:
        raise SchemaError(loc, str(exc)) from None


def _category_names(C: FinCat) -> tuple:
    from .fincat.category import _name

    return {_name(a): a for a in C.objects}, {_name(m): m for m in C.morphisms}


def functor_to_json(F: FunctorData, source: str | None = None, target: str | None = None) -> dict:
    out = F.to_json()
    if source is not None:
        out["source"] = source
    if target is not None:
        out["target"] = target
    return out


def functor_from_json(data, categories: Mapping[str, FinCat], loc: str = "$") -> FunctorData:
    src_name = _field(data, "source", str, loc)
    tgt_name = _field(data, "target", str, loc)
    for key, name in (("source", src_name), ("target", tgt_name)):
        if name not in categories:
            raise SchemaError(f"{loc}.{key}", f"unknown category {name!r}")
    S, T = categories[src_name], categories[tgt_name]
    s_obj, s_mor = _category_names(S)
    t_obj, t_mor = _category_names(T)
    omap, mmap = {}, {}
    for a, b in _field(data, "objects", dict, loc).items():
        if a not in s_obj or b not in t_obj:
            raise SchemaError(f"{loc}.objects.{a}", f"unknown object {a!r} -> {b!r}")
        omap[s_obj[a]] = t_obj[b]
    for m, n in _field(data, "morphisms", dict, loc).items():
        if m not in s_mor or n not in t_mor:
            raise SchemaError(f"{loc}.morphisms.{m}", f"unknown morphism {m!r} -> {n!r}")
        mmap[s_mor[m]] = t_mor[n]
    try:
        return FunctorData(S, T, omap, mmap, name=data.get("name", ""))
    except CategoryError as exc:
        raise SchemaError(loc, str(exc)) from None


def square_to_json(sq: SquareData) -> dict:
    from .fincat.category import _name

    cats, keys = {}, {}
    for role, C in (("D", sq.D), ("A", sq.A), ("B", sq.B), ("C", sq.C)):
        if id(C) in keys:
            continue
        key = C.name or role
        while key in cats:
            key += "'"
        keys[id(C)] = key
        cats[key] = C.to_json()
    out: dict[str, Any] = {"name": sq.name, "categories": cats}
    for role in ("top", "left", "right", "bottom"):
        F = getattr(sq, role)
        out[role] = functor_to_json(F, keys[id(F.source)], keys[id(F.target)])
    out["alpha"] = {_name(d): _name(c) for d, c in sq.alpha.components.items()}
    return out


def square_from_json(data, loc: str = "$") -> SquareData:
    cats_data = _field(data, "categories", dict, loc)
    cats = {k: fincat_from_json(v, f"{loc}.categories.{k}") for k, v in cats_data.items()}
    fs = {role: functor_from_json(_field(data, role, dict, loc), cats, f"{loc}.{role}") for role in ("top", "left", "right", "bottom")}
    D, C = fs["top"].source, fs["right"].target
    d_obj, _ = _category_names(D)
    _, c_mor = _category_names(C)
    comps = {}
    for d, c in _field(data, "alpha", dict, loc).items():
        if d not in d_obj or c not in c_mor:
            raise SchemaError(f"{loc}.alpha.{d}", f"unknown component {d!r} -> {c!r}")
        comps[d_obj[d]] = c_mor[c]
    try:
        alpha = NatTransData(fs["top"].then(fs["right"]), fs["left"].then(fs["bottom"]), comps)
        return SquareData(fs["top"], fs["left"], fs["right"], fs["bottom"], alpha, name=data.get("name", ""))
    except CategoryError as exc:
        raise SchemaError(loc, str(exc)) from None


# ---------------------------------------------------------------------------
# functor specs


def spec_to_json(phi: RingMap) -> dict:
    return {"source": list(phi.source_vars), "target": list(phi.target_vars), "images": [str(p) for p in phi.images]}


def spec_from_json(data, loc: str = "$") -> RingMap:
    source = _vars(_field(data, "source", list, loc), f"{loc}.source")
    target = _vars(_field(data, "target", list, loc), f"{loc}.target")
    images = _field(data, "images", list, loc)
    if len(images) != len(source):
        raise SchemaError(f"{loc}.images", f"expected {len(source)} images")
    return RingMap(source, target, tuple(_poly(p, target, f"{loc}.images[{i}]") for i, p in enumerate(images)))


DECODERS: dict[str, Callable] = {
    "fpmodule": fpmodule_from_json,
    "endopair": endopair_from_json,
    "complex": complex_from_json,
    "fincat": fincat_from_json,
    "square": square_from_json,
    "spec": spec_from_json,
}


def load(path: str | Path, kind: str):
    """Read and decode a JSON file of the given schema."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return DECODERS[kind](data)


def dumps(value) -> str:
    """Deterministic JSON text."""
    return json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
