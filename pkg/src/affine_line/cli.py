"""Command-line front end: ``affine-line <group> <command> ...``.

Every command prints a JSON fragment (or writes it under ``--out``).
Exit status: 0 on success/pass, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import derived, modcat, serial, univ
from .fincat import (
    FinCat,
    comma_category,
    comma_square,
    ev1_square,
    exact_square_check,
    fold_square,
    monoid_square_check,
    nn_truncations,
    plus_square,
    sieve_cosieve,
)
from .fincat.category import _name
from .modcat import FpModule, TypeWitness
from .polyalg.poly import Poly
from .serial import SchemaError
from .suites import OUT_ENV, SUITES, SuiteConfig, run_suite


class UsageError(Exception):
    pass


def _read_json(arg: str, what: str):
    """``arg`` is a path, or inline JSON when it starts with ``{``."""
    if arg.lstrip().startswith("{"):
        try:
            return json.loads(arg)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"<{what}>:{exc.lineno}:{exc.colno}", exc.msg) from None
    path = Path(arg)
    if not path.exists():
        raise UsageError(f"{what}: no such file {arg!r}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{arg}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _module(arg, what="module") -> FpModule:
    return serial.fpmodule_from_json(_read_json(arg, what), f"{what}$")


def _endo(arg, what="endopair"):
    return serial.endopair_from_json(_read_json(arg, what), f"{what}$")


def _functor_bundle(arg):
    """``{categories: {name: fincat}, functor: functor}``."""
    data = _read_json(arg, "functor")
    cats = serial._field(data, "categories", dict, "functor$")
    categories = {k: serial.fincat_from_json(v, f"functor$.categories.{k}") for k, v in cats.items()}
    return serial.functor_from_json(serial._field(data, "functor", dict, "functor$"), categories, "functor$.functor")


def _object(C: FinCat, name: str):
    for a in C.objects:
        if _name(a) == name:
            return a
    raise UsageError(f"no object {name!r} in {C.name or 'category'}; objects: {[_name(a) for a in C.objects]}")


def _module_out(M: FpModule) -> dict:
    out = {"module": serial.fpmodule_to_json(M)}
    if len(M.ring) <= 1:
        out["canonical"] = str(M.canonical)
        out["canonicalForm"] = M.canonical.to_json()
    return out


def _spec(args) -> univ.MonFunctorSpec:
    if args.spec:
        return univ.MonFunctorSpec(serial.spec_from_json(_read_json(args.spec, "spec"), "spec$"))
    if args.image:
        return univ.MonFunctorSpec.build(args.image, source=(args.source,), target=(args.target,))
    raise UsageError("give --spec FILE or --image POLY")


# ---------------------------------------------------------------------------
# commands; each returns (fragment, ok)


def cmd_mod_tensor(args):
    M, N = _module(args.m, "m"), _module(args.n, "n")
    if len(M.ring) == 1:
        T = modcat.tensor_a1(M, N)
    else:
        T = modcat.tensor_over(M, N)
    return {"command": "mod tensor", "result": _module_out(T)}, True


def cmd_mod_evalpha(args):
    M = _module(args.module)
    ring = tuple(args.ring.split(",")) if args.ring else ()
    w = TypeWitness.build(args.alpha, ring)
    E = modcat.ev_alpha(M, w, route=args.route)
    return {"command": "mod evalpha", "alpha": str(w.alpha), "route": args.route, "result": _module_out(E)}, True


def cmd_mod_iso(args):
    M, N = _module(args.m, "m"), _module(args.n, "n")
    same = modcat.iso_test(M, N)
    return {"command": "mod iso", "isomorphic": same, "m": str(M.canonical), "n": str(N.canonical)}, same


def cmd_mod_hom(args):
    m, n = _endo(args.m, "m"), _endo(args.n, "n")
    H = modcat.hom_fp(m, n)
    return {
        "command": "mod hom",
        "dim": H.dim,
        "hom": serial.endopair_to_json(H),
        "canonical": str(modcat.fp(H).canonical),
    }, True


def cmd_derived_ev0(args):
    m = _endo(args.endo)
    C = derived.ev_alpha_derived(m, args.alpha)
    h = derived.homology_dims(C)
    return {
        "command": "derived ev0",
        "alpha": args.alpha,
        "complex": serial.complex_to_json(C),
        "homology": {str(k): v for k, v in sorted(h.items())},
    }, True


def cmd_fincat_comma(args):
    u = _functor_bundle(args.functor)
    b = _object(u.target, args.object)
    cat, _ = comma_category(u, b, args.side)
    return {"command": "fincat comma", "side": args.side, "object": args.object, "category": cat.to_json()}, True


def cmd_fincat_exact(args):
    if args.square:
        sq = serial.square_from_json(_read_json(args.square, "square"), "square$")
    elif args.functor and args.object is not None:
        u = _functor_bundle(args.functor)
        sq = comma_square(u, _object(u.target, args.object))
    else:
        raise UsageError("give --square FILE, or --functor FILE with --object B for a comma square")
    rep = exact_square_check(sq, budget=args.budget)
    if not args.quiet:
        print(rep.table(), file=sys.stderr)
    return {"command": "fincat exact", "square": sq.name, "report": rep.to_json()}, rep.verdict.value == "Certified"


def cmd_fincat_sieve(args):
    u = _functor_bundle(args.functor)
    res = sieve_cosieve(u)
    return {"command": "fincat sieve", "kind": res.kind.value, "reason": res.reason}, True


def cmd_fincat_trunc(args):
    tr = nn_truncations(args.trunc_k)
    out = {"command": "fincat trunc", "truncations": tr.to_json()}
    ok = all(tr.adjunction_checks().values())
    if args.squares:
        out["squares"] = {
            sq.name: monoid_square_check(sq, max_gamma=args.max_gamma, bound=args.trunc_k).to_json()
            for sq in (ev1_square(), plus_square(), fold_square())
        }
    return out, ok


def cmd_univ_type(args):
    spec = _spec(args)
    w = univ.extract_type(spec)
    return {"command": "univ type", "spec": spec.to_json(), "type": str(w.alpha)}, True


def cmd_univ_decompose(args):
    spec = _spec(args)
    r = univ.decompose(spec, _module(args.module))
    return {"command": "univ decompose", "spec": spec.to_json(), **r.to_json()}, r.agree


def cmd_univ_an(args):
    target = tuple(args.target.split(","))
    spec = univ.AnSpec.build(args.images, target)
    r = univ.an_decompose(spec, _module(args.module))
    return {"command": "univ an", "images": [str(p) for p in spec.images], **r.to_json()}, r.agree


def cmd_univ_projection(args):
    spec = _spec(args)
    r = univ.projection(spec, _endo(args.m, "m"), _endo(args.n, "n"))
    return {"command": "univ projection", "spec": spec.to_json(), **r.to_json()}, r.agree


def cmd_suite_run(args):
    suites = tuple(s for s in (args.suites or "").split(",") if s)
    cfg = SuiteConfig(
        seed=args.seed,
        max_dim=args.max_dim,
        max_deg=args.max_deg,
        trunc_k=args.trunc_k,
        suites=suites,
        scale=args.scale,
        jobs=args.jobs,
    )
    report = run_suite(cfg)
    paths = report.write(args.out or os.environ.get(OUT_ENV) or ".", stem=args.stem)
    sys.stdout.write(report.text())
    return None, report.ok, paths


# ---------------------------------------------------------------------------
# parser


def _add_spec_args(p):
    p.add_argument("--spec", help="spec JSON file (or inline JSON)")
    p.add_argument("--image", help="image of the source variable, e.g. 's^2+1'")
    p.add_argument("--source", default="t")
    p.add_argument("--target", default="s")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="affine-line", description=__doc__.splitlines()[0])
    top.add_argument("--out", help=f"directory for output files (env {OUT_ENV} also works)")
    groups = top.add_subparsers(dest="group", required=True)

    mod = groups.add_parser("mod", help="modules over Q[t]").add_subparsers(dest="command", required=True)
    p = mod.add_parser("tensor", help="Day tensor of two fpmodules")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(fn=cmd_mod_tensor)
    p = mod.add_parser("evalpha", help="evaluate at a coherent endomorphism of the unit")
    p.add_argument("--module", required=True)
    p.add_argument("--alpha", required=True, help="polynomial over --ring")
    p.add_argument("--ring", default="", help="comma-separated variables of alpha's ring (default Q)")
    p.add_argument("--route", choices=("substitution", "tensor"), default="tensor")
    p.set_defaults(fn=cmd_mod_evalpha)
    p = mod.add_parser("iso", help="isomorphism test by canonical forms")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(fn=cmd_mod_iso)
    p = mod.add_parser("hom", help="internal hom of two endomorphism pairs")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(fn=cmd_mod_hom)

    der = groups.add_parser("derived", help="derived evaluation").add_subparsers(dest="command", required=True)
    p = der.add_parser("ev0", help="cone of T - alpha and its homology")
    p.add_argument("--endo", required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.set_defaults(fn=cmd_derived_ev0)

    fc = groups.add_parser("fincat", help="finite categories").add_subparsers(dest="command", required=True)
    p = fc.add_parser("comma", help="comma category u/b or b/u")
    p.add_argument("--functor", required=True, help="{categories, functor} JSON")
    p.add_argument("--object", required=True)
    p.add_argument("--side", choices=("over", "under"), default="over")
    p.set_defaults(fn=cmd_fincat_comma)
    p = fc.add_parser("exact", help="certify a square cell by cell")
    p.add_argument("--square")
    p.add_argument("--functor")
    p.add_argument("--object")
    p.add_argument("--budget", type=int, default=20_000)
    p.add_argument("--quiet", action="store_true", help="do not print the cell table on stderr")
    p.set_defaults(fn=cmd_fincat_exact)
    p = fc.add_parser("sieve", help="classify a fully faithful inclusion")
    p.add_argument("--functor", required=True)
    p.set_defaults(fn=cmd_fincat_sieve)
    p = fc.add_parser("trunc", help="truncated monoid categories and their adjunctions")
    p.add_argument("--trunc-k", type=int, default=4)
    p.add_argument("--squares", action="store_true", help="also check the monoid squares")
    p.add_argument("--max-gamma", type=int, default=2)
    p.set_defaults(fn=cmd_fincat_trunc)

    un = groups.add_parser("univ", help="morphisms out of the affine line").add_subparsers(dest="command", required=True)
    p = un.add_parser("type", help="extract the type of a ring-map functor")
    _add_spec_args(p)
    p.set_defaults(fn=cmd_univ_type)
    p = un.add_parser("decompose", help="F(M) directly and as ev_type(F_0(M))")
    _add_spec_args(p)
    p.add_argument("--module", required=True)
    p.set_defaults(fn=cmd_univ_decompose)
    p = un.add_parser("an", help="several variables, one at a time")
    p.add_argument("--images", nargs="+", required=True)
    p.add_argument("--target", default="s")
    p.add_argument("--module", required=True)
    p.set_defaults(fn=cmd_univ_an)
    p = un.add_parser("projection", help="projection formula for extension of scalars")
    _add_spec_args(p)
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(fn=cmd_univ_projection)

    su = groups.add_parser("suite", help="property suites").add_subparsers(dest="command", required=True)
    p = su.add_parser("run", help="run suites and write report.json / report.txt")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-dim", type=int, default=5)
    p.add_argument("--max-deg", type=int, default=5)
    p.add_argument("--trunc-k", type=int, default=8)
    p.add_argument("--suites", help="comma-separated subset of: " + ", ".join(SUITES))
    p.add_argument("--scale", type=float, default=1.0, help="multiply case counts")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--stem", default="report")
    p.add_argument("--out", dest="out", default=argparse.SUPPRESS, help="output directory")
    p.set_defaults(fn=cmd_suite_run)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "out"):
        args.out = None
    try:
        result = args.fn(args)
    except (SchemaError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.fn is cmd_suite_run:
        _, ok, _ = result
        return 0 if ok else 1
    fragment, ok = result
    text = serial.dumps(fragment)
    out = args.out or os.environ.get(OUT_ENV)
    if out:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        name = fragment["command"].replace(" ", "-") + ".json"
        (path / name).write_text(text)
    sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
