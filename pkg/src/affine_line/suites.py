"""Property suites over seeded random corpora, and the report they produce.

Every suite draws from its own random stream ``rng_for(seed, suite)``, so
the report for a suite does not depend on which other suites ran or in
which order.  Reports hold no timings and are serialized with sorted keys:
the same configuration gives byte-identical output.
"""

from __future__ import annotations

import json
import os
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import corpus, derived, modcat, univ
from .fincat import (
    comma_square,
    der4_comparison,
    ev1_square,
    exact_square_check,
    fold_square,
    is_isomorphism,
    monoid_square_check,
    nn_truncations,
    plus_square,
    random_poset_diagram,
)
from .modcat import FpModule, TypeWitness, iso_test
from .polyalg import linalg
from .polyalg.matrix import PolyMatrix
from .polyalg.poly import Poly
from .serial import endopair_to_json, fpmodule_to_json

OUT_ENV = "AFFINE_LINE_OUT"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 1
    max_dim: int = 5
    max_deg: int = 5
    trunc_k: int = 8
    suites: tuple = ()
    scale: float = 1.0  # multiplies every case count; 1.0 is the acceptance size
    jobs: int = 1

    def __post_init__(self):
        for name in ("max_dim", "max_deg", "trunc_k", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.trunc_k < 2:
            raise ValueError("trunc_k must be at least 2")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}; known: {list(SUITES)}")

    def count(self, n: int) -> int:
        return max(1, round(n * self.scale))

    def selected(self) -> tuple:
        return tuple(s for s in SUITES if not self.suites or s in self.suites)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "maxDim": self.max_dim,
            "maxDeg": self.max_deg,
            "truncK": self.trunc_k,
            "scale": self.scale,
            "suites": list(self.selected()),
        }


@dataclass
class Check:
    name: str
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c["ok"])

    @property
    def ok(self) -> bool:
        return bool(self.cases) and self.passed == len(self.cases)

    def run(self, fn: Callable[[], tuple], **echo) -> bool:
        """Run one case; ``fn`` returns ``(ok, output)``. Exceptions count as failures."""
        try:
            ok, output = fn()
        except Exception as exc:  # a crash is a failed case, with its message echoed
            ok, output = False, {"error": f"{type(exc).__name__}: {exc}", "where": traceback.format_exc(limit=-1).strip()}
        self.cases.append({"ok": bool(ok), "input": echo, "output": output})
        return bool(ok)

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "total": len(self.cases), "ok": self.ok, "cases": self.cases}


@dataclass
class Report:
    config: SuiteConfig
    suites: dict  # name -> list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for checks in self.suites.values() for c in checks)

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "ok": self.ok,
            "suites": {
                name: {"ok": all(c.ok for c in checks), "checks": [c.to_json() for c in checks]}
                for name, checks in self.suites.items()
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    def text(self) -> str:
        lines = [f"seed {self.config.seed}: {'PASS' if self.ok else 'FAIL'}"]
        for name, checks in self.suites.items():
            for c in checks:
                lines.append(f"  [{'PASS' if c.ok else 'FAIL'}] {name} / {c.name}: {c.passed}/{len(c.cases)}")
                for case in c.cases:
                    if not case["ok"]:
                        lines.append(f"      failed on {json.dumps(case['input'], sort_keys=True)}")
                        lines.append(f"      -> {json.dumps(case['output'], sort_keys=True)}")
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str | Path | None = None, stem: str = "report") -> tuple:
        out = Path(out_dir or os.environ.get(OUT_ENV) or ".")
        out.mkdir(parents=True, exist_ok=True)
        j, t = out / f"{stem}.json", out / f"{stem}.txt"
        j.write_text(self.dumps())
        t.write_text(self.text())
        return j, t


def _cf(M: FpModule) -> str:
    return str(M.canonical)


def _fraction_module(rng, max_dim: int) -> FpModule:
    """A finite-dimensional Q-vector space with a redundant presentation."""
    g = rng.randint(0, max_dim)
    r = rng.randint(0, g)
    rows = [[Fraction(rng.randint(-2, 2)) for _ in range(r)] for _ in range(g)]
    return FpModule((), g, PolyMatrix.from_constants(rows, r))


# ---------------------------------------------------------------------------
# suites


def suite_monoidal_unit(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "monoidal-unit")
    unit = modcat.structure_i(FpModule.free(1, ()), "t")
    left, right = Check("unit (x) M = M"), Check("M (x) unit = M")
    for _ in range(cfg.count(100)):
        M = corpus.random_fpmodule(rng, min(cfg.max_dim, 4))
        echo = {"module": fpmodule_to_json(M)}
        left.run(lambda: _same(modcat.tensor_a1(unit, M), M), **echo)
        right.run(lambda: _same(modcat.tensor_a1(M, unit), M), **echo)
    return [left, right]


def _same(A: FpModule, B: FpModule) -> tuple:
    return iso_test(A, B), {"lhs": _cf(A), "rhs": _cf(B)}


def suite_oracle_equivalence(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "oracle-equivalence")
    chk = Check("coequalizer tensor = presentation tensor")
    cap = min(cfg.max_dim, 4)
    for _ in range(cfg.count(100)):
        m, n = corpus.random_endo(rng, cap), corpus.random_endo(rng, cap)
        chk.run(
            lambda: _same(modcat.fp(modcat.tensor_coeq(m, n)), modcat.tensor_a1(modcat.fp(m), modcat.fp(n))),
            m=endopair_to_json(m),
            n=endopair_to_json(n),
        )
    return [chk]


_ALPHAS = (("0", ()), ("1", ()), ("2", ()), ("s^2", ("s",)))


def suite_ev(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "ev")
    unit_checks = []
    for text, ring in _ALPHAS:
        chk = Check(f"ev_{text} . i_! = id")
        w = TypeWitness.build(text, ring)
        for _ in range(cfg.count(100)):
            V = corpus.random_fpmodule(rng, 3, 2, var="s") if ring else _fraction_module(rng, cfg.max_dim)
            iV = modcat.structure_i(V, "t")

            def case(V=V, iV=iV, w=w):
                a = modcat.ev_alpha(iV, w, route="tensor")
                b = modcat.ev_alpha(iV, w, route="substitution")
                return iso_test(a, V) and iso_test(b, V), {"tensor": _cf(a), "substitution": _cf(b), "expected": _cf(V)}

            chk.run(case, module=fpmodule_to_json(V))
        unit_checks.append(chk)

    one = Check("ev_1 as colimit = ev_1 by witness")
    for _ in range(cfg.count(100)):
        m = corpus.random_endo(rng, cfg.max_dim)
        one.run(
            lambda m=m: _same(modcat.ev_one_via_colimit(m), modcat.ev_alpha(modcat.fp(m), TypeWitness.build(1), route="tensor")),
            m=endopair_to_json(m),
        )

    mono = Check("ev_alpha strong monoidal")
    cap = min(cfg.max_dim, 4)
    for _ in range(cfg.count(100)):
        m, n = corpus.random_endo(rng, cap), corpus.random_endo(rng, cap)
        text, ring = rng.choice(_ALPHAS + tuple((str(a), ()) for a in corpus.EIGENVALUES))
        w = TypeWitness.build(text, ring)

        def case(m=m, n=n, w=w):
            M, N = modcat.fp(m), modcat.fp(n)
            lhs = modcat.ev_alpha(modcat.tensor_a1(M, N), w, route="tensor")
            rhs = modcat.tensor_over(modcat.ev_alpha(M, w), modcat.ev_alpha(N, w))
            return _same(lhs, rhs)

        mono.run(case, m=endopair_to_json(m), n=endopair_to_json(n), alpha=text)
    return unit_checks + [one, mono]


def suite_derived(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "derived")
    ev0 = Check("H0/H1 of derived ev_0 = coker/ker")
    for _ in range(cfg.count(100)):
        m = corpus.random_endo(rng, cfg.max_dim)

        def case(m=m):
            h = derived.homology_dims(derived.ev_zero_derived(m))
            r = linalg.rank(m.matrix(), m.dim) if m.dim else 0
            expected = {0: m.dim - r, 1: m.dim - r}
            got = {0: h.get(0, 0), 1: h.get(1, 0)}
            rest = {k: v for k, v in h.items() if k not in (0, 1) and v}
            return got == expected and not rest, {"H": {str(k): v for k, v in sorted(h.items())}, "rank": r}

        ev0.run(case, m=endopair_to_json(m))

    acyc = Check("cones of invertible maps are acyclic")
    for _ in range(cfg.count(100)):
        m = corpus.invertible_endo(rng, cfg.max_dim)
        acyc.run(lambda m=m: (derived.is_acyclic(derived.ev_zero_derived(m)), {}), m=endopair_to_json(m))
    return [ev0, acyc]


_PROJECTION_SPECS = ("s", "s^2", "s^2 + 1", "s^3 - s", "2*s + 1")


def suite_closed_structure(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "closed-structure")
    cap = min(cfg.max_dim, 3)
    adj = Check("dim Hom(m (x) n, p) = dim Hom(m, [n, p])")
    for _ in range(cfg.count(50)):
        m, n, p = (corpus.random_endo(rng, cap) for _ in range(3))

        def case(m=m, n=n, p=p):
            lhs = modcat.hom_fp(modcat.tensor_coeq(m, n), p).dim
            rhs = modcat.hom_fp(m, modcat.hom_fp(n, p)).dim
            return lhs == rhs, {"lhs": lhs, "rhs": rhs}

        adj.run(case, m=endopair_to_json(m), n=endopair_to_json(n), p=endopair_to_json(p))

    proj = Check("projection formula")
    total = cfg.count(50)
    for k in range(total):
        spec = univ.MonFunctorSpec.build(_PROJECTION_SPECS[k % len(_PROJECTION_SPECS)])
        m, n = corpus.random_endo(rng, cap), corpus.random_endo(rng, cap)

        def case(spec=spec, m=m, n=n):
            r = univ.projection(spec, m, n)
            return r.agree, r.to_json()

        proj.run(case, spec=spec.to_json(), m=endopair_to_json(m), n=endopair_to_json(n))
    return [adj, proj]


def _random_two_variable_module(rng) -> FpModule:
    ring = ("t1", "t2")
    g = rng.randint(1, 2)
    r = rng.randint(1, 3)
    monomials = [Poly.one(ring), Poly.var("t1", ring), Poly.var("t2", ring), Poly.var("t1", ring) * Poly.var("t2", ring)]
    rows = []
    for _ in range(g):
        row = []
        for _ in range(r):
            p = Poly.zero(ring)
            for mono in rng.sample(monomials, rng.randint(0, 2)):
                p = p + mono * rng.choice((-2, -1, 1, 2))
            row.append(p)
        rows.append(row)
    return FpModule.from_relations(ring, g, rows)


def suite_universal_property(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "universal-property")
    dec = Check("F = ev_type . F_0^N")
    for _ in range(cfg.count(100)):
        spec = univ.MonFunctorSpec(corpus.random_spec(rng, min(3, cfg.max_deg)))
        M = corpus.random_fpmodule(rng, min(cfg.max_dim, 3), 1)

        def case(spec=spec, M=M):
            r = univ.decompose(spec, M)
            return r.agree, {"direct": _cf(r.direct), "composite": _cf(r.composite)}

        dec.run(case, spec=spec.to_json(), module=fpmodule_to_json(M))

    trip = Check("type round trips")
    for _ in range(cfg.count(100)):
        alpha = corpus.random_poly(rng, cfg.max_deg, "s")

        def case(alpha=alpha):
            spec = univ.spec_from_type(TypeWitness(("s",), alpha))
            back = univ.extract_type(spec)
            again = univ.spec_from_type(back)
            return back.alpha == alpha and again.phi == spec.phi, {"type": str(back.alpha)}

        trip.run(case, alpha=str(alpha))

    an = Check("A^2 one variable at a time")
    for _ in range(cfg.count(50)):
        spec = univ.AnSpec((2), tuple(corpus.random_poly(rng, 2, "s") for _ in range(2)))
        M = _random_two_variable_module(rng)

        def case(spec=spec, M=M):
            r = univ.an_decompose(spec, M)
            return r.agree, {"direct": _cf(r.direct), "composite": _cf(r.composite)}

        an.run(case, images=[str(p) for p in spec.images], module=fpmodule_to_json(M))
    return [dec, trip, an]


def suite_category_engine(cfg: SuiteConfig) -> list:
    rng = corpus.rng_for(cfg.seed, "category-engine")
    der4 = Check("pointwise Kan extension comparison is iso")
    for _ in range(cfg.count(50)):
        u = corpus.random_poset_functor(rng, 4, 4)
        X = random_poset_diagram(u.source, rng, max_dim=min(cfg.max_dim, 3))
        b = rng.choice(u.target.objects)

        def case(u=u, X=X, b=b):
            mat, n_src, n_tgt = der4_comparison(u, X, b)
            return is_isomorphism(mat, n_tgt, n_src), {"dims": [n_src, n_tgt]}

        der4.run(case, functor=u.to_json(), diagram=X.to_json(), b=str(b))

    exact = Check("comma squares are exact")
    for idx, u in enumerate(corpus.poset_functor_corpus(20)):
        for b in u.target.objects:

            def case(u=u, b=b):
                rep = exact_square_check(comma_square(u, b))
                return rep.verdict.value == "Certified", {"verdict": rep.verdict.value, "cells": len(rep.cells)}

            exact.run(case, corpus_index=idx, b=str(b))

    adj = Check("truncated adjunctions")
    for k in range(2, cfg.trunc_k + 1):
        tr = nn_truncations(k)

        def case(tr=tr):
            res = tr.adjunction_checks()
            return all(res.values()), res

        adj.run(case, k=k)
    return [der4, exact, adj]


def suite_squares(cfg: SuiteConfig) -> list:
    """Recorded outcomes for the monoid squares and the literal truncation claims."""
    expected = {"ev1": "CertifiedOnTruncations", "plus": "Certified", "fold": "Refuted"}
    chk = Check("monoid squares match recorded verdicts")
    for sq in (ev1_square(), plus_square(), fold_square()):

        def case(sq=sq):
            rep = monoid_square_check(sq, max_gamma=2, bound=4)
            return rep.verdict == expected[sq.name], {"verdict": rep.verdict, "expected": expected[sq.name]}

        chk.run(case, square=sq.name)
    lit = Check("literal truncation claims are refuted, corrected ones hold")
    for k in range(2, min(cfg.trunc_k, 5) + 1):

        def case(k=k):
            tr = nn_truncations(k)
            ok = (not tr.literal_embedding.ok) and (not tr.literal_reflection.ok) and tr.certificates["pair"].verdict.certifies
            return ok, {"embedding": tr.literal_embedding.to_json(), "reflection": tr.literal_reflection.to_json()}

        lit.run(case, k=k)
    return [chk, lit]


SUITES: dict = {
    "monoidal-unit": suite_monoidal_unit,
    "oracle-equivalence": suite_oracle_equivalence,
    "ev": suite_ev,
    "derived": suite_derived,
    "closed-structure": suite_closed_structure,
    "universal-property": suite_universal_property,
    "category-engine": suite_category_engine,
    "squares": suite_squares,
}


def run_suite(cfg: SuiteConfig) -> Report:
    names = cfg.selected()
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as pool:
            results = dict(zip(names, pool.map(lambda n: SUITES[n](cfg), names)))
    else:
        results = {n: SUITES[n](cfg) for n in names}
    return Report(cfg, {n: results[n] for n in names})
