import oracles
import pytest
from conftest import endos, modules, structured_endos, vector_spaces
from hypothesis import given, strategies as st

from affine_line import modcat
from affine_line.modcat import (
    EndoPair,
    FpModule,
    RingMap,
    TypeWitness,
    base_change,
    ev_alpha,
    ev_one_via_colimit,
    external_product,
    fp,
    hom_fp,
    iso_test,
    plus_shriek,
    restrict_plus,
    structure_i,
    tensor_a1,
    tensor_coeq,
    tensor_over,
)
from affine_line.polyalg import NoSmithForm, Poly

UNIT = structure_i(FpModule.free(1, ()), "t")
ALPHAS = [("0", ()), ("1", ()), ("-2", ()), ("s^2", ("s",)), ("s + 1", ("s",))]


def cyc(p, ring=("t",)):
    return FpModule.cyclic(p, ring)


def canon(M):
    return str(M.canonical)


# -- examples ----------------------------------------------------------------


def test_base_change_example():
    phi = RingMap.build(("t",), ("s",), ["s^2"])
    assert canon(base_change(cyc("t - 4"), phi)) == "Q[s]/(s^2 - 4)"


def test_frozen_substitutions(frozen):
    for case in frozen["substitution"]:
        phi = RingMap.build(("t",), ("s",), [case["image"]])
        M = base_change(cyc(case["p"]), phi)
        expected = "Q[s]" if case["result"] == "0" else f"Q[s]/({case['result']})"
        assert canon(M) == expected


def test_unit_is_free_rank_one():
    assert canon(UNIT) == "Q[t]"


def test_external_product_of_witnesses():
    a, b = TypeWitness.build(2).module("t"), TypeWitness.build(3).module("t")
    P = external_product(a, b)
    assert P.ring == ("t1", "t2")
    assert [str(x) for x in P.presentation.entries[0]] == ["t1 - 2", "t2 - 3"]


@pytest.mark.parametrize("alpha,beta,expected", [(2, 2, "Q[t]/(t - 2)"), (2, 3, "0"), (0, 0, "Q[t]/(t)")])
def test_plus_shriek_of_witnesses(alpha, beta, expected):
    P = external_product(TypeWitness.build(alpha).module(), TypeWitness.build(beta).module())
    assert canon(plus_shriek(P)) == expected


def test_tensor_examples():
    assert canon(tensor_a1(cyc("t^2"), cyc("t^2"))) == "Q[t]/(t^2)"
    assert canon(tensor_a1(cyc("t - 1"), cyc("t + 1"))) == "0"
    J = EndoPair.jordan(2, 2)
    assert canon(tensor_a1(fp(J), fp(J))) == "Q[t]/(t^2 - 4*t + 4)"


def test_tensor_cyclic_is_gcd(frozen):
    for case in frozen["tensor_cyclic"]:
        T = tensor_a1(cyc(case["p"]), cyc(case["q"]))
        assert canon(T) == ("0" if case["gcd"] == "1" else f"Q[t]/({case['gcd']})")


def test_coequalizer_examples(frozen):
    assert tensor_coeq(EndoPair.scalar(1), EndoPair.scalar(2)).dim == 0
    J = EndoPair.jordan(0, 2)
    T = tensor_coeq(J, J)
    assert T.dim == 2
    assert canon(fp(T)) == "Q[t]/(t^2)"
    endos_ = {k: EndoPair.from_rows(v) for k, v in frozen["endos"].items()}
    for case in frozen["coeq"]:
        assert tensor_coeq(endos_[case["m"]], endos_[case["n"]]).dim == case["dim"]


def test_evaluation_examples():
    assert canon(ev_alpha(cyc("t^2"), TypeWitness.build(0))) == "Q"
    assert canon(ev_alpha(cyc("t^2"), TypeWitness.build(1))) == "0"
    w = TypeWitness.build("s^2", ("s",))
    for route in ("substitution", "tensor"):
        assert canon(ev_alpha(cyc("(t - 2)^2"), w, route=route)) == "Q[s]/(s^4 - 4*s^2 + 4)"


def test_ev_one_colimit_example():
    assert ev_one_via_colimit(EndoPair.jordan(0, 2)).canonical.free_rank == 0


def test_restrict_plus_example():
    R = restrict_plus(cyc("t - 3"))
    assert [[str(x) for x in row] for row in R.presentation.entries] == [["t1 - 3", "t1 - t2"]]


def test_hom_examples(frozen):
    assert hom_fp(EndoPair.jordan(0, 2), EndoPair.jordan(0, 2)).dim == 2
    assert hom_fp(EndoPair.scalar(1), EndoPair.scalar(2)).dim == 0
    endos_ = {k: EndoPair.from_rows(v) for k, v in frozen["endos"].items()}
    for case in frozen["hom"]:
        assert hom_fp(endos_[case["m"]], endos_[case["n"]]).dim == case["dim"]


def test_iso_examples():
    assert not iso_test(cyc("t^2"), FpModule.direct_sum(cyc("t"), cyc("t")))
    assert iso_test(cyc("t^2 - 1"), FpModule.direct_sum(cyc("t - 1"), cyc("t + 1")))
    with pytest.raises(NoSmithForm):
        iso_test(restrict_plus(cyc("t")), restrict_plus(cyc("t")))


def test_to_endo_round_trip():
    M = FpModule.direct_sum(cyc("t^2 + 1"), cyc("(t - 1)^2"))
    assert iso_test(fp(M.to_endo()), M)
    with pytest.raises(ValueError):
        FpModule.free(1).to_endo()


# -- properties --------------------------------------------------------------


@given(modules())
def test_unit_law(M):
    assert iso_test(tensor_a1(UNIT, M), M)
    assert iso_test(tensor_a1(M, UNIT), M)


@given(modules(max_gens=2), modules(max_gens=2))
def test_tensor_commutes(M, N):
    assert iso_test(tensor_a1(M, N), tensor_a1(N, M))


@given(structured_endos(3), structured_endos(3), structured_endos(2))
def test_tensor_associates(a, b, c):
    A, B, C = fp(a), fp(b), fp(c)
    assert iso_test(tensor_a1(tensor_a1(A, B), C), tensor_a1(A, tensor_a1(B, C)))


@given(structured_endos(), structured_endos())
def test_oracle_equivalence(m, n):
    assert iso_test(fp(tensor_coeq(m, n)), tensor_a1(fp(m), fp(n)))
    assert tensor_coeq(m, n).dim == oracles.coeq_dim(m.matrix(), n.matrix())


@given(endos(3), endos(3))
def test_oracle_equivalence_generic_matrices(m, n):
    assert iso_test(fp(tensor_coeq(m, n)), tensor_a1(fp(m), fp(n)))


@given(vector_spaces(), vector_spaces())
def test_structure_morphism_strong_monoidal(V, W):
    lhs = structure_i(tensor_over(V, W))
    rhs = tensor_a1(structure_i(V), structure_i(W))
    assert iso_test(lhs, rhs)


@given(structured_endos(3), structured_endos(3), st.sampled_from(ALPHAS))
def test_ev_strong_monoidal(m, n, alpha):
    w = TypeWitness.build(*alpha)
    M, N = fp(m), fp(n)
    lhs = ev_alpha(tensor_a1(M, N), w, route="tensor")
    assert iso_test(lhs, tensor_over(ev_alpha(M, w), ev_alpha(N, w)))


@given(vector_spaces(), st.sampled_from(ALPHAS[:3]))
def test_section_property(V, alpha):
    w = TypeWitness.build(*alpha)
    for route in ("substitution", "tensor"):
        assert iso_test(ev_alpha(structure_i(V), w, route=route), V)


@given(modules(var="s", max_deg=1))
def test_section_property_polynomial_alpha(V):
    w = TypeWitness.build("s^2", ("s",))
    assert iso_test(ev_alpha(structure_i(V, "t"), w, route="tensor"), V)


@given(st.integers(-2, 2), structured_endos(3), structured_endos(3))
def test_witness_idempotence(alpha, m, n):
    w = TypeWitness.build(alpha).module()
    assert iso_test(tensor_a1(w, w), w)
    M, N = fp(m), fp(n)
    lhs = tensor_a1(tensor_a1(M, w), tensor_a1(N, w))
    assert iso_test(lhs, tensor_a1(tensor_a1(M, N), w))


@given(endos(4))
def test_ev_one_coincidence(m):
    by_witness = ev_alpha(fp(m), TypeWitness.build(1), route="tensor")
    assert iso_test(ev_one_via_colimit(m), by_witness)


@given(modules(max_gens=2))
def test_plus_shriek_restrict_plus_is_identity(M):
    assert iso_test(plus_shriek(restrict_plus(M)), M)


@given(structured_endos(2), structured_endos(2), structured_endos(2))
def test_tensor_hom_dimensions(m, n, p):
    assert hom_fp(tensor_coeq(m, n), p).dim == hom_fp(m, hom_fp(n, p)).dim


@given(endos(3), endos(3))
def test_hom_against_brute_force(m, n):
    assert hom_fp(m, n).dim == oracles.hom_dim(m.matrix(), n.matrix())


@given(modules(max_gens=2), modules(max_gens=2), modules(max_gens=2))
def test_tensor_distributes_over_sums(A, B, C):
    lhs = tensor_a1(A, FpModule.direct_sum(B, C))
    rhs = FpModule.direct_sum(tensor_a1(A, B), tensor_a1(A, C))
    assert iso_test(lhs, rhs)


@given(modules())
def test_canonical_form_against_sympy(M):
    cf = M.canonical
    rows = M.presentation.to_strings()
    assert [str(f) for f in cf.factors] == oracles.factors(rows)
    assert cf.free_rank == oracles.free_rank(rows, M.generators)


def test_ev_alpha_rejects_mismatched_base():
    M = FpModule.cyclic("u - t", ("u", "t"))
    with pytest.raises(ValueError):
        ev_alpha(M, TypeWitness.build("s", ("s",)))
