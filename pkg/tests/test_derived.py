from fractions import Fraction

import oracles
import pytest
from conftest import endos
from hypothesis import given, strategies as st

from affine_line import derived
from affine_line.derived import ChainComplex, ComplexMap, InvalidComplex, cone
from affine_line.modcat import EndoPair, TypeWitness, ev_alpha, fp
from affine_line.polyalg import linalg, poly


@st.composite
def two_term(draw, max_dim=3):
    """A complex ``Q^b -> Q^a`` in degrees 1 -> 0."""
    a, b = draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim))
    d = [[Fraction(draw(st.integers(-2, 2))) for _ in range(b)] for _ in range(a)]
    return ChainComplex.build(0, (a, b), [d])


@st.composite
def self_maps(draw):
    """``lambda * id + (d h + h d)`` on a two-term complex: always a chain map."""
    C = draw(two_term())
    a, b = C.dims
    h = [[Fraction(draw(st.integers(-2, 2))) for _ in range(a)] for _ in range(b)]
    lam = Fraction(draw(st.integers(-2, 2)))
    d = C.d(1)
    f0 = linalg.matmul(d, h, b, a) if a and b else linalg.zeros(a, a)
    f1 = linalg.matmul(h, d, a, b) if a and b else linalg.zeros(b, b)
    f0 = [[x + (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(f0)]
    f1 = [[x + (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(f1)]
    return ComplexMap.build(C, C, {0: f0, 1: f1})


def test_jordan_block_homology():
    C = derived.ev_zero_derived(EndoPair.jordan(0, 2))
    assert derived.homology_dims(C) == {0: 1, 1: 1}


def test_cone_of_t_squared_on_truncated_polynomials():
    # Q[t]/(t^3) as a vector space, acted on by t^2
    T = EndoPair.jordan(0, 3).matrix()
    T2 = linalg.matmul(T, T, 3, 3)
    C = derived.ev_zero_derived(EndoPair.from_rows(T2))
    assert derived.homology(C, 0) == 2 and derived.homology(C, 1) == 2


def test_alpha_one_on_companion_of_t2_minus_1():
    m = EndoPair.companion(poly("t^2 - 1", ("t",)))
    C = derived.ev_alpha_derived(m, 1)
    assert derived.homology_dims(C) == {0: 1, 1: 1}


def test_invertible_gives_acyclic_cone():
    assert derived.is_acyclic(derived.ev_zero_derived(EndoPair.jordan(3, 2)))
    assert derived.is_acyclic(derived.ev_alpha_derived(EndoPair.jordan(0, 2), 1))


def test_frozen_kernel_cokernel(frozen):
    for case in frozen["derived"]:
        m = EndoPair.from_rows(case["matrix"])
        for alpha, (h0, h1) in zip((0, 1, 2), case["h"]):
            h = derived.homology_dims(derived.ev_alpha_derived(m, alpha))
            assert (h.get(0, 0), h.get(1, 0)) == (h0, h1)


def test_invalid_complex_rejected():
    with pytest.raises(InvalidComplex):
        ChainComplex.build(0, (1, 1, 1), [[[1]], [[1]]])
    C = ChainComplex.build(0, (1, 1), [[[1]]])
    with pytest.raises(InvalidComplex):
        ComplexMap.build(C, C, {0: [[1]], 1: [[0]]})


def test_zero_complex_is_unit_and_zero_object():
    Z = ChainComplex.zero()
    C = ChainComplex.build(0, (2, 1), [[[1], [0]]])
    assert derived.homology_dims(derived.direct_sum(C, Z)) == derived.homology_dims(C)
    assert derived.homology_dims(derived.direct_sum(Z, C)) == derived.homology_dims(C)
    assert ComplexMap.zero(Z, C).components == () and ComplexMap.zero(C, Z).components == ()
    assert derived.is_acyclic(Z)


def test_json_round_trip():
    C = derived.ev_zero_derived(EndoPair.jordan(0, 3))
    assert ChainComplex.from_json(C.to_json()) == C


@given(endos(4))
def test_h0_h1_are_coker_and_ker(m):
    h = derived.homology_dims(derived.ev_zero_derived(m))
    k, c = oracles.ker_coker(m.matrix()) if m.dim else (0, 0)
    assert h.get(0, 0) == c and h.get(1, 0) == k


@given(endos(4))
def test_h0_matches_abelian_evaluation(m):
    h0 = derived.homology(derived.ev_zero_derived(m), 0) if m.dim else 0
    assert h0 == ev_alpha(fp(m), TypeWitness.build(0)).canonical.free_rank


@given(self_maps())
def test_euler_characteristic_of_cone(f):
    chi = derived.euler_characteristic
    assert chi(cone(f)) == chi(f.target) - chi(f.source)


@given(two_term())
def test_cone_of_identity_is_acyclic(C):
    assert derived.is_acyclic(cone(ComplexMap.identity(C)))


@given(self_maps())
def test_cone_long_exact_sequence_bound(f):
    # H_n(cone) sits between coker and ker of H(f); its dimension is bounded
    H = derived.homology_dims
    hc, ha, hb = H(cone(f)), H(f.source), H(f.target)
    for n, v in hc.items():
        assert v <= hb.get(n, 0) + ha.get(n - 1, 0)
