"""Finite-category engine: categories, comma constructions, contractibility
certificates, homotopy-exact squares and Kan extensions of vector-space
diagrams."""

from .category import (
    CategoryError,
    FinCat,
    FunctorData,
    NatTransData,
    all_functors,
    arrow,
    capped_nat,
    chain,
    corner,
    discrete,
    disjoint_union,
    empty,
    identity_functor,
    identity_transformation,
    inclusion,
    monoid,
    point,
    poset,
    product,
    square,
    terminal,
    to_terminal,
)
from .comma import (
    Cell,
    SieveKind,
    SieveResult,
    SquareData,
    SquareReport,
    SquareVerdict,
    comma_category,
    comma_square,
    exact_square_check,
    sieve_cosieve,
    triple_comma,
)
from .contract import (
    Adjunction,
    Certificate,
    Verdict,
    check_adjunction,
    contractibility_certificate,
    find_left_adjoint,
    find_right_adjoint,
    revalidate,
)
from .kan import (
    VectDiagram,
    adjunction_dims,
    colimit,
    der1_check,
    der4_comparison,
    is_isomorphism,
    kan_extend_finvect,
    left_kan_global,
    limit,
    nat_dim,
    random_poset_diagram,
)
from .truncations import (
    MonoidSquare,
    Truncations,
    ev1_square,
    fold_square,
    monoid_cell,
    monoid_square_check,
    nn_truncations,
    plus_square,
)

__all__ = [name for name in dir() if not name.startswith("_")]
