"""Independent reference computations built on sympy only.

Nothing here imports the package under test: matrices and polynomials
travel as strings, so the oracle cannot share a bug with the code it checks.
"""

from __future__ import annotations

from itertools import combinations

import sympy
from sympy import Matrix, QQ, Rational, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

t, s = symbols("t s")


def expr(text: str, var=t):
    return sympy.sympify(text.replace("^", "**"), locals={str(var): var})


def monic_str(p, var=t) -> str:
    """Canonical monic string, in the package's printing convention."""
    P = sympy.Poly(p, var)
    P = P.monic()
    terms = []
    for (k,), c in sorted(P.terms(), key=lambda kv: -kv[0][0]):
        c = Rational(c)
        mono = "" if k == 0 else (str(var) if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def factors(rows: list, var=t) -> list:
    """Non-unit monic invariant factors of a matrix of polynomial strings."""
    R = QQ[var]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if m == 0 or n == 0:
        return []
    dm = DomainMatrix([[R.from_sympy(expr(x, var)) for x in row] for row in rows], (m, n), R)
    out = []
    for f in invariant_factors(dm):
        p = sympy.Poly(R.to_sympy(f), var)
        if not p.is_zero and p.degree() > 0:
            out.append(monic_str(p.as_expr(), var))
    return out


def free_rank(rows: list, generators: int, var=t) -> int:
    if not rows or not rows[0]:
        return generators
    M = Matrix([[expr(x, var) for x in row] for row in rows])
    return generators - M.rank()


def determinantal_factors(rows: list, var=t) -> list:
    """Invariant factors as ratios of gcds of k x k minors (small matrices only)."""
    M = Matrix([[expr(x, var) for x in row] for row in rows])
    m, n = M.shape
    prev, out = sympy.Integer(1), []
    for k in range(1, min(m, n) + 1):
        g = sympy.Integer(0)
        for r in combinations(range(m), k):
            for c in combinations(range(n), k):
                g = sympy.gcd(g, M.extract(list(r), list(c)).det())
        if g == 0:
            break
        g = sympy.Poly(g, var).monic().as_expr()
        q = sympy.cancel(g / prev)
        if sympy.Poly(q, var).degree() > 0:
            out.append(monic_str(q, var))
        prev = g
    return out


def coeq_dim(T: list, S: list) -> int:
    """dim coker(T (x) 1 - 1 (x) S), brute force."""
    if not T or not S:
        return 0
    A, B = Matrix(T), Matrix(S)
    D = sympy.kronecker_product(A, sympy.eye(B.shape[0])) - sympy.kronecker_product(sympy.eye(A.shape[0]), B)
    return D.shape[0] - D.rank()


def hom_dim(T: list, S: list) -> int:
    """dim {X : X T = S X}."""
    if not T or not S:
        return 0
    A, B = Matrix(T), Matrix(S)
    a, b = A.shape[0], B.shape[0]
    # vec(XA - BX) = (A^T (x) I_b - I_a (x) B) vec(X), column-major vec
    K = sympy.kronecker_product(A.T, sympy.eye(b)) - sympy.kronecker_product(sympy.eye(a), B)
    return a * b - K.rank()


def ker_coker(T: list, alpha=0) -> tuple:
    A = Matrix(T) - alpha * sympy.eye(len(T))
    r = A.rank()
    return A.shape[0] - r, A.shape[0] - r


def compose_gcd(p: str, q: str) -> str:
    g = sympy.gcd(expr(p), expr(q))
    return "1" if sympy.Poly(g, t).degree() == 0 else monic_str(g)


def substitute_entry(p: str, image: str) -> str:
    """p(image(s)) as a plain polynomial in s, without normalizing."""
    return str(sympy.expand(expr(p).subs(t, expr(image, s))))


def substitute(p: str, image: str) -> str:
    """p(image(s)) as a monic polynomial in s (p over t)."""
    return monic_str(sympy.expand(expr(p).subs(t, expr(image, s))), s)
