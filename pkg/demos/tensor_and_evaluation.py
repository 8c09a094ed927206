"""
Modules over the affine line and evaluation at a point
======================================================

A Q[t]-module is a vector space with an endomorphism.  Evaluating at alpha
is base change along ``t -> alpha``; it sends the monoidal unit to Q and
respects tensor products.
"""

from affine_line.modcat import EndoPair, FpModule, TypeWitness, ev_alpha, fp, iso_test, tensor_a1, tensor_coeq

# A Jordan block with eigenvalue 1 and a diagonal endomorphism, as modules.
m = EndoPair.jordan(1, 2)
n = EndoPair.from_rows([[1, 0], [0, 2]])
M, N = fp(m), fp(n)
print("M =", M.canonical)
print("N =", N.canonical)

# The tensor product can be computed from presentations or as a coequalizer
# of the two actions on m (x) n; both routes give the same invariant factors.
print("M (x) N        =", tensor_a1(M, N).canonical)
print("via coequalizer =", fp(tensor_coeq(m, n)).canonical)

# The unit is Q[t] itself.
unit = FpModule.free(1, ("t",))
print("unit (x) M = M:", iso_test(tensor_a1(unit, M), M))

# Evaluation at a rational point gives a vector space ...
for a in (0, 1, 2):
    print(f"ev_{a}(M (x) N) =", ev_alpha(tensor_a1(M, N), TypeWitness.build(a)).canonical)

# ... and at a polynomial it gives a module over the new variable.  The
# substitution route and the tensor route (external product with the
# witness, pushed forward along addition) agree.
w = TypeWitness.build("s^2", ("s",))
Q = FpModule.cyclic("t - 4")
print("ev_{s^2}(Q[t]/(t - 4)), substitution:", ev_alpha(Q, w, route="substitution").canonical)
print("ev_{s^2}(Q[t]/(t - 4)), tensor:      ", ev_alpha(Q, w, route="tensor").canonical)
