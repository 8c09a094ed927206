"""
Derived evaluation at zero
==========================

Evaluating at alpha is right exact but not exact.  Its derived version is the
cone of ``T - alpha``: H0 is the cokernel and H1 the kernel.
"""

from affine_line.derived import ev_alpha_derived, homology_dims, is_acyclic
from affine_line.modcat import EndoPair

nilpotent = EndoPair.jordan(0, 3)
C = ev_alpha_derived(nilpotent, 0)
print("complex:", C.to_json())
print("homology:", homology_dims(C))

# At an eigenvalue that does not occur the map is invertible, so the cone is acyclic.
print("acyclic at alpha = 1:", is_acyclic(ev_alpha_derived(nilpotent, 1)))

# The Euler characteristic is 0 for every alpha: both ends have dimension dim(m).
mixed = EndoPair.direct_sum(EndoPair.jordan(0, 2), EndoPair.jordan(2, 1))
for alpha in (0, 1, 2):
    print(f"alpha={alpha}:", homology_dims(ev_alpha_derived(mixed, alpha)))
