"""Exact computations in the module model of the affine line over a derivator.

Objects of the affine line are modules over Q[t], equivalently Q-vector
spaces with a distinguished endomorphism.  The subpackages cover the
polynomial kernel (:mod:`affine_line.polyalg`), the module model
(:mod:`affine_line.modcat`), chain complexes (:mod:`affine_line.derived`),
finite categories (:mod:`affine_line.fincat`) and the universal property
checks (:mod:`affine_line.univ`).
"""

__version__ = "0.1.0"
