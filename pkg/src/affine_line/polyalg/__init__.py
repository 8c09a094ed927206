"""Exact arithmetic kernel: rationals, polynomials, matrices, Smith form."""

from fractions import Fraction as Rational

from .matrix import PolyMatrix
from .poly import Poly, VariableMismatch, poly
from .snf import NoSmithForm, SnfResult, in_column_span, invariant_factors, kernel_basis, smith_normal_form


def poly_arith(a: Poly, b: Poly, op: str):
    """Dispatch ``add``, ``sub``, ``mul`` or ``divmod`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "Rational",
    "Poly",
    "PolyMatrix",
    "SnfResult",
    "NoSmithForm",
    "VariableMismatch",
    "poly",
    "poly_arith",
    "smith_normal_form",
    "invariant_factors",
    "kernel_basis",
    "in_column_span",
]
