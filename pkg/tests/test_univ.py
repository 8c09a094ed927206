import oracles
import pytest
from conftest import modules, polys, structured_endos
from hypothesis import given, strategies as st

from affine_line import univ
from affine_line.modcat import EndoPair, FpModule, RingMap, TypeWitness, fp, iso_test
from affine_line.polyalg import Poly, poly
from affine_line.univ import AnSpec, MonFunctorSpec

specs = polys(3, "s").map(lambda p: MonFunctorSpec(RingMap(("t",), ("s",), (p,))))
PROJECTION_SPECS = ["s", "s^2", "s^2 + 1", "s^3 - s", "2*s + 1"]


def canon(M):
    return str(M.canonical)


# -- examples ----------------------------------------------------------------


def test_type_example():
    assert str(univ.extract_type(MonFunctorSpec.build("s^2+1")).alpha) == "s^2 + 1"


def test_base_is_coefficient_inclusion():
    base = univ.extract_base(MonFunctorSpec.build("s^3 - 2"))
    assert base.source_vars == () and base.target_vars == ("s",)


def test_decompose_examples():
    r = univ.decompose(MonFunctorSpec.build("s^2"), FpModule.cyclic("t - 4"))
    assert canon(r.direct) == canon(r.composite) == "Q[s]/(s^2 - 4)"
    r = univ.decompose(MonFunctorSpec.build("0"), FpModule.cyclic("t^2"))
    assert canon(r.direct) == canon(r.composite) == "Q[s]"


def test_decompose_matches_substitution_oracle(frozen):
    for case in frozen["substitution"]:
        r = univ.decompose(MonFunctorSpec.build(case["image"]), FpModule.cyclic(case["p"]))
        expected = "Q[s]" if case["result"] == "0" else f"Q[s]/({case['result']})"
        assert canon(r.composite) == expected


def test_factorization_probes():
    rep = univ.plus_star_factorization(FpModule.cyclic("t - 1"), betas=(1, 0))
    assert rep.agree and rep.evidence_only
    assert [str(l) for _, l, _ in rep.probes] == ["Q", "0"]
    rep = univ.plus_star_factorization(FpModule.cyclic("t^2"), betas=(0,))
    assert str(rep.probes[0][1]) == str(rep.probes[0][2]) == "Q"


def test_an_examples():
    r = univ.an_decompose(AnSpec.build(["s", "s"]), FpModule.from_relations(("t1", "t2"), 1, [["t1 - t2"]]))
    assert canon(r.direct) == canon(r.composite) == "Q[s]"
    r = univ.an_decompose(AnSpec.build(["0", "1"]), FpModule.from_relations(("t1", "t2"), 1, [["t1", "t2 - 1"]]))
    assert canon(r.direct) == canon(r.composite) == "Q[s]"


def test_projection_example():
    spec = MonFunctorSpec.build("s^2")
    r = univ.projection(spec, EndoPair.scalar(4), EndoPair.scalar(2))
    assert r.agree and canon(r.lhs) == "Q[s]/(s - 2)"


def test_literal_projection_reading_is_not_an_isomorphism():
    spec = MonFunctorSpec.build("s^2")
    lhs, rhs = univ.projection_literal_sides(spec, EndoPair.scalar(4), EndoPair.scalar(2))
    assert canon(lhs) == "Q[s]/(s^2 - 4)" and canon(rhs) == "Q[s]/(s - 2)"


def test_type_morphisms():
    M = FpModule.cyclic("t^2 - 4")
    a, b = TypeWitness.build(2), TypeWitness.build(-2)
    with pytest.raises(ValueError):
        univ.type_morphism_transform(1, a, b, M)
    zero = univ.type_morphism_transform(0, a, b, M)
    assert zero.well_defined and zero.matrix.is_zero()
    same = univ.type_morphism_transform(3, a, a, M)
    assert same.well_defined and canon(same.source) == "Q"


def test_type_requires_one_variable_source():
    with pytest.raises(ValueError):
        univ.extract_type(MonFunctorSpec.build(["s", "s"], source=("x", "y")))


# -- properties --------------------------------------------------------------


@given(specs, modules(max_gens=2))
def test_decompose(spec, M):
    assert univ.decompose_check(spec, M)


@given(specs, modules(max_gens=2))
def test_decompose_direct_route_against_sympy(spec, M):
    image = str(spec.phi.images[0])
    rows = [[oracles.substitute_entry(x, image) for x in row] for row in M.presentation.to_strings()]
    direct = univ.decompose(spec, M).direct.canonical
    assert [str(f) for f in direct.factors] == oracles.factors(rows, oracles.s)


@given(modules(max_gens=2))
def test_section_corollary(M):
    ident = MonFunctorSpec(RingMap(("t",), ("s",), (Poly.var("s", ("s",)),)))
    r = univ.decompose(ident, M)
    renamed = FpModule(("s",), M.generators, M.presentation.substitute({"t": Poly.var("s", ("s",))}, ("s",)))
    assert iso_test(r.composite, renamed)


@given(polys(3, "s"), polys(3, "r"))
def test_type_of_composite(p, q):
    f = MonFunctorSpec(RingMap(("t",), ("s",), (p,)))
    g = MonFunctorSpec(RingMap(("s",), ("r",), (q,)))
    composite = univ.extract_type(f.then(g)).alpha
    assert composite == p.substitute({"s": q}, ("r",))


@given(polys(5, "s"))
def test_type_round_trip(alpha):
    spec = univ.spec_from_type(TypeWitness(("s",), alpha))
    assert univ.extract_type(spec).alpha == alpha


@given(specs, modules(max_gens=2))
def test_functor_round_trip(spec, M):
    again = univ.spec_from_type(univ.extract_type(spec))
    assert iso_test(again.apply(M), spec.apply(M))


@given(st.lists(polys(1, "s"), min_size=2, max_size=2), st.data())
def test_an_decompose(images, data):
    spec = AnSpec(2, tuple(images))
    ring = ("t1", "t2")
    g = data.draw(st.integers(1, 2))
    r = data.draw(st.integers(1, 2))
    gens = ["0", "1", "t1", "t2", "t1 - t2", "t1*t2 - 1", "t1^2 + t2"]
    rows = [[data.draw(st.sampled_from(gens)) for _ in range(r)] for _ in range(g)]
    assert univ.an_decompose_check(spec, FpModule.from_relations(ring, g, rows))


@given(modules(max_gens=2))
def test_plus_star_factorization(M):
    assert univ.plus_star_factorization_check(M)


@given(st.sampled_from(PROJECTION_SPECS), structured_endos(3), structured_endos(3))
def test_projection_formula(image, m, n):
    assert univ.projection_iso_check(MonFunctorSpec.build(image), m, n)


@given(st.integers(-2, 2), st.integers(-2, 2), modules(max_gens=2))
def test_type_morphism_well_defined(a, b, M):
    q = 1 if a == b else 0
    tm = univ.type_morphism_transform(q, TypeWitness.build(a), TypeWitness.build(b), M)
    assert tm.well_defined
