"""
Kan extensions and exact squares on finite categories
=====================================================

Left Kan extensions of vector-space diagrams are computed pointwise as
colimits over comma categories.  A square is exact when every cell
``(a/D/b)_gamma`` has contractible nerve; the checker looks for a
certificate (initial or terminal object, zigzag contraction) or for an
obstruction.
"""

import random

from affine_line.fincat import (
    chain,
    comma_square,
    der4_comparison,
    ev1_square,
    exact_square_check,
    fold_square,
    inclusion,
    is_isomorphism,
    monoid_square_check,
    nn_truncations,
    plus_square,
    poset,
    random_poset_diagram,
)

# The endpoints of [2] included into [2]; extend a random diagram.
A = poset([0, 2], lambda a, b: a <= b, name="ends")
u = inclusion(A, chain(2), name="u")
X = random_poset_diagram(A, random.Random(3))
for b in chain(2).objects:
    matrix, src, tgt = der4_comparison(u, X, b)
    print(f"b={b}: colim over (u/b) has dim {src}, (u_! X)(b) has dim {tgt}, iso: {is_isomorphism(matrix, src, tgt)}")

# The comma square at b is exact.
report = exact_square_check(comma_square(u, 1))
print(report.table())

# Squares of monoids.  Cells of the ev1 square are infinite, so they are
# checked on truncations; the fold square is refuted by an Euler obstruction.
for sq in (ev1_square(), plus_square(), fold_square()):
    print(sq.name, monoid_square_check(sq, max_gamma=2, bound=4).verdict)

# Truncated adjunctions with exact triangle identities.
print(nn_truncations(3).adjunction_checks())
