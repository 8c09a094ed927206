"""
Morphisms out of the affine line
================================

A ring map ``Q[t] -> Q[s]`` acts on modules by extension of scalars.  Such a
functor is determined by two pieces of data: its type, the image of the
coordinate as a coherent endomorphism of the unit, and its base, the
restriction to constant modules.  Recombining them recovers the functor.
"""

from affine_line import univ
from affine_line.modcat import EndoPair, FpModule

spec = univ.MonFunctorSpec.build("s^2 + 1")
print("type:", univ.extract_type(spec).alpha)

# F(M) computed directly and as ev_type(F_0(M)).
M = FpModule.cyclic("(t - 2)^2")
r = univ.decompose(spec, M)
print("direct:   ", r.direct.canonical)
print("composite:", r.composite.canonical)

# Several variables, one at a time.
two = univ.AnSpec.build(["s", "s^2"])
N = FpModule.from_relations(("t1", "t2"), 1, [["t1 - 1", "t2 - 1"]])
print("A^2:", univ.an_decompose(two, N).composite.canonical)

# Projection formula for t -> s^2.  The left side is a twisted coequalizer:
# s acts through the second factor.
sq = univ.MonFunctorSpec.build("s^2")
m, n = EndoPair.from_rows([[4]]), EndoPair.from_rows([[2]])
p = univ.projection(sq, m, n)
print("projection:", p.lhs.canonical, "=", p.rhs.canonical, p.agree)

# Reading both sides with s acting through the first factor fails.
lhs, rhs = univ.projection_literal_sides(sq, m, n)
print("literal reading:", lhs.canonical, "vs", rhs.canonical)
