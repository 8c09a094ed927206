import random

import pytest
from hypothesis import given, strategies as st

from affine_line import corpus
from affine_line.fincat import (
    CategoryError,
    FinCat,
    FunctorData,
    NatTransData,
    SieveKind,
    SquareData,
    SquareVerdict,
    Verdict,
    arrow,
    capped_nat,
    chain,
    check_adjunction,
    comma_category,
    comma_square,
    contractibility_certificate,
    corner,
    discrete,
    disjoint_union,
    empty,
    exact_square_check,
    find_left_adjoint,
    find_right_adjoint,
    identity_functor,
    identity_transformation,
    inclusion,
    nn_truncations,
    point,
    poset,
    product,
    revalidate,
    sieve_cosieve,
    terminal,
    to_terminal,
    triple_comma,
)
from affine_line.fincat.truncations import (
    L_literal,
    corrected_embedding,
    inclusion_of_L_has_adjoint,
    monoid_cell,
    monoid_square_check,
    ev1_square,
    fold_square,
    plus_square,
    literal_embedding_check,
    literal_reflection_check,
)

seeds = st.integers(0, 10_000)


def random_functor(seed):
    return corpus.random_poset_functor(random.Random(seed), 4, 4)


# -- categories --------------------------------------------------------------


def test_table_laws_are_validated():
    C = chain(3)
    C.validate()
    with pytest.raises(CategoryError):
        FinCat(["a"], {"ida": ("a", "a"), "f": ("a", "a")}, {"a": "ida"}, {("ida", "ida"): "ida", ("f", "ida"): "f", ("ida", "f"): "f"})


def test_size_cap():
    with pytest.raises(CategoryError):
        discrete(range(65))


def test_opposite_and_product():
    C = chain(2)
    Cop = C.opposite()
    assert Cop.is_initial(2) and Cop.is_terminal(0)
    P = product(arrow(), arrow())
    assert len(P.objects) == 4 and P.is_initial((0, 0))


def test_json_round_trip():
    C = product(arrow(), chain(2))
    again = FinCat.from_json(C.to_json())
    assert again.to_json() == C.to_json()


def test_disjoint_union_components():
    U = disjoint_union(chain(1), chain(2))
    assert len(U.components()) == 2


def test_functor_checks():
    C, D = chain(1), chain(2)
    with pytest.raises(CategoryError):
        FunctorData.build(C, D, lambda a: 1 - a, lambda m: (1 - m[0], 1 - m[1]))
    F = FunctorData.build(C, D, lambda a: a + 1, lambda m: (m[0] + 1, m[1] + 1))
    assert F.is_fully_faithful() and F.is_injective_on_objects()
    identity_transformation(F)


# -- comma categories --------------------------------------------------------


def test_comma_of_identity_has_terminal():
    C = product(arrow(), arrow())
    for b in C.objects:
        comma, _ = comma_category(identity_functor(C), b)
        assert comma.is_terminal((b, C.id(b)))


def test_comma_point_example():
    u = point(arrow(), 0)
    comma, pr = comma_category(u, 1)
    assert len(comma.objects) == 1
    under, _ = comma_category(u, 1, "under")
    assert len(under.objects) == 0


def test_comma_rejects_foreign_object():
    with pytest.raises(CategoryError):
        comma_category(identity_functor(arrow()), 7)


@given(seeds)
def test_comma_of_identity_has_terminal_random(seed):
    u = random_functor(seed)
    B = u.target
    for b in B.objects:
        comma, _ = comma_category(identity_functor(B), b)
        assert comma.is_terminal((b, B.id(b)))


# -- certificates ------------------------------------------------------------


def test_certificate_examples():
    assert contractibility_certificate(terminal()).verdict is Verdict.INITIAL
    assert contractibility_certificate(empty()).verdict is Verdict.EMPTY
    assert contractibility_certificate(discrete([0, 1])).verdict is Verdict.DISCONNECTED
    assert contractibility_certificate(chain(2).opposite()).verdict is Verdict.INITIAL


def test_circle_is_refuted_by_euler_characteristic():
    # two parallel arrows a => b: nerve is a circle, chi = 0
    C = FinCat.build(
        ["a", "b"],
        [("ida", "a", "a"), ("idb", "b", "b"), ("f", "a", "b"), ("g", "a", "b")],
        lambda x: f"id{x}",
        lambda g, f: g if f.startswith("id") else f,
    )
    cert = contractibility_certificate(C)
    assert cert.verdict is Verdict.EULER and cert.witness == 0
    assert revalidate(C, cert)


def test_monoid_category_stays_unknown():
    cert = contractibility_certificate(capped_nat(3))
    assert cert.verdict is Verdict.UNKNOWN


@pytest.mark.parametrize("k", [2, 3, 5])
def test_L_truncation_has_zigzag(k):
    tr = nn_truncations(k)
    cert = tr.certificates["L"]
    assert cert.verdict is Verdict.ZIGZAG
    assert revalidate(tr.L, cert)


@pytest.mark.parametrize("k", range(2, 9))
def test_truncation_certificates_are_stable_in_k(k):
    tr = nn_truncations(k)
    for name, cert in tr.certificates.items():
        assert cert.verdict.certifies, name
        assert revalidate(tr.pair if name == "pair" else tr.L, cert)


@given(seeds)
def test_certificates_revalidate(seed):
    u = random_functor(seed)
    for b in u.target.objects:
        for side in ("over", "under"):
            comma, _ = comma_category(u, b, side)
            cert = contractibility_certificate(comma)
            assert revalidate(comma, cert)


# -- adjunctions -------------------------------------------------------------


def test_identity_adjunction():
    C = chain(2)
    I = identity_functor(C)
    ids = {a: C.id(a) for a in C.objects}
    assert check_adjunction(I, I, ids, ids)


def test_terminal_projection_has_adjoints_iff_extremal_objects():
    C = chain(2)
    pi = to_terminal(C)
    right = find_right_adjoint(pi)
    left = find_left_adjoint(pi)
    assert right is not None and right.right.ob("*") == 2
    assert left is not None and left.left.ob("*") == 0
    assert find_right_adjoint(to_terminal(discrete([0, 1]))) is None


@pytest.mark.parametrize("k", range(2, 9))
def test_truncated_adjunctions(k):
    assert all(nn_truncations(k).adjunction_checks().values())


def test_broken_unit_fails_triangle_identities():
    tr = nn_truncations(2)
    adj = tr.pair_adjunction
    N = adj.left.source
    bad = dict(adj.unit.components)
    assert check_adjunction(adj.left, adj.right, adj.unit, adj.counit)
    bad[0] = ("nope",)
    assert not check_adjunction(adj.left, adj.right, bad, adj.counit)


# -- the truncation library --------------------------------------------------


def test_library_examples():
    tr = nn_truncations(2)
    assert sorted(tr.L.objects) == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
    assert tr.seven.G.ob((1, 1)) == 2
    assert all(x[1] == 0 for x in tr.seven.C0.objects)
    assert len(tr.seven.C0.objects) == 3


def test_literal_truncation_claims_fail_with_counterexamples():
    emb = literal_embedding_check(3)
    ref = literal_reflection_check(3)
    assert not emb.ok and emb.counterexample is not None
    assert not ref.ok
    assert corrected_embedding(3).is_fully_faithful()
    assert inclusion_of_L_has_adjoint(3) == (False, False)


def test_seven_functor_has_no_adjoints():
    tr = nn_truncations(2)
    assert find_left_adjoint(tr.seven.G) is None
    assert find_right_adjoint(tr.seven.G) is None


# -- squares -----------------------------------------------------------------


def test_der4_square_over_three_object_poset():
    u = identity_functor(chain(2))
    sq = comma_square(u, 2)
    rep = exact_square_check(sq)
    assert rep.verdict is SquareVerdict.CERTIFIED
    cell = triple_comma(sq, 0, "*", (0, 2))
    assert any(cell.is_terminal(x) for x in cell.objects)


@given(seeds)
def test_der4_squares_certified(seed):
    u = random_functor(seed)
    for b in u.target.objects:
        assert exact_square_check(comma_square(u, b)).verdict is SquareVerdict.CERTIFIED


def test_empty_D_square_refuted():
    E, D = terminal(), empty()
    f = FunctorData(D, E, {}, {})
    sq = SquareData(f, f, identity_functor(E), identity_functor(E), NatTransData(f, f, {}))
    assert exact_square_check(sq).verdict is SquareVerdict.REFUTED_BY_EMPTY


def test_identity_square_on_point():
    E = terminal()
    I = identity_functor(E)
    sq = SquareData(I, I, I, I, identity_transformation(I))
    cell = triple_comma(sq, "*", "*", E.id("*"))
    assert len(cell.objects) == 1
    assert exact_square_check(sq).verdict is SquareVerdict.CERTIFIED


def test_product_square_certified():
    A = product(arrow(), arrow())
    sq = comma_square(identity_functor(A), (1, 1))
    assert exact_square_check(sq).verdict is SquareVerdict.CERTIFIED


def test_budget_is_reported():
    u = identity_functor(chain(4))
    rep = exact_square_check(comma_square(u, 4), budget=3)
    assert rep.verdict is SquareVerdict.BUDGET_EXCEEDED


def test_monoid_squares():
    assert monoid_square_check(ev1_square(), 2).verdict == "CertifiedOnTruncations"
    assert monoid_square_check(plus_square(), 2).verdict == "Certified"
    fold = monoid_square_check(fold_square(), 2)
    assert fold.verdict == "Refuted"
    # gamma = 0 is a point; gamma >= 1 are circles
    for gamma, _, _, _, cert in fold.cells:
        assert cert.verdict is (Verdict.INITIAL if gamma == (0,) else Verdict.EULER)


def test_fold_cells_are_finite():
    cat, truncated = monoid_cell(fold_square(), (2,))
    assert not truncated and len(cat.objects) == 3


# -- sieves ------------------------------------------------------------------


def test_sieve_examples():
    C = corner()
    i = inclusion(C.full_subcategory([(0, 0), (1, 0)]), C)
    assert sieve_cosieve(i).kind is SieveKind.SIEVE
    U = disjoint_union(chain(1), chain(1))
    comp = U.full_subcategory([(0, 0), (0, 1)])
    assert sieve_cosieve(inclusion(comp, U)).kind is SieveKind.BOTH
    N = capped_nat(2)
    assert sieve_cosieve(point(N, "*")).kind is SieveKind.NEITHER
