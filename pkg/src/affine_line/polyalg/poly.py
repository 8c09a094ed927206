"""Exact polynomials over Q in an ordered list of named variables."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class VariableMismatch(ValueError):
    """Raised when two polynomials (or matrices) live over different rings."""


class Poly:
    """Immutable polynomial with rational coefficients.

    ``terms`` maps exponent vectors (one entry per variable) to nonzero
    :class:`~fractions.Fraction` coefficients.  The zero polynomial has no
    terms.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match variables {self.vars}")
                c = Fraction(c)
                if c:
                    clean[exp] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, vars: Sequence[str] = ()) -> "Poly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "Poly":
        return cls(vars)

    @classmethod
    def one(cls, vars: Sequence[str] = ()) -> "Poly":
        return cls.const(1, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"{name!r} not among {vars}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exp: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Scalar], var: str = "t") -> "Poly":
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls((var,), {(k,): c for k, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str] = ()) -> "Poly":
        return _Parser(text, tuple(vars)).parse()

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        k = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    def sorted_terms(self) -> list:
        """Terms in descending order: total degree, then lexicographic."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient())

    def coeffs(self) -> list:
        """Dense coefficient list (lowest first) of a univariate polynomial."""
        self._require_univariate()
        if not self.terms:
            return []
        out = [Fraction(0)] * (self.degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise VariableMismatch(f"variables {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.vars:
            return Poly((), {(): self.constant_value() / other.constant_value()}), Poly.zero(())
        self._require_univariate()
        a = self.coeffs()
        b = other.coeffs()
        db = len(b) - 1
        lead = b[-1]
        q = [Fraction(0)] * max(len(a) - db, 0)
        while len(a) - 1 >= db and a:
            shift = len(a) - 1 - db
            c = a[-1] / lead
            q[shift] = c
            for k, bk in enumerate(b):
                a[shift + k] -= c * bk
            while a and a[-1] == 0:
                a.pop()
        v = self.vars[0]
        return Poly.from_coeffs(q, v), Poly.from_coeffs(a, v)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other`` (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd of two univariate (or constant) polynomials."""
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def _require_univariate(self):
        if len(self.vars) != 1:
            raise ValueError(f"operation needs exactly one variable, have {self.vars}")

    # -- ring maps ----------------------------------------------------------

    def substitute(self, images: Mapping[str, "Poly"], target_vars: Sequence[str]) -> "Poly":
        """Apply the ring map sending each variable to ``images[name]``.

        Every variable of ``self`` needs an image over ``target_vars``.
        """
        target_vars = tuple(target_vars)
        imgs = []
        for v in self.vars:
            img = images[v]
            if isinstance(img, (int, Fraction)):
                img = Poly.const(img, target_vars)
            if img.vars != target_vars:
                raise VariableMismatch(f"image of {v} lives over {img.vars}, expected {target_vars}")
            imgs.append(img)
        powers: list = [dict() for _ in imgs]
        result = Poly.zero(target_vars)
        for exp, c in self.terms.items():
            term = Poly.const(c, target_vars)
            for k, e in enumerate(exp):
                if e:
                    p = powers[k].get(e)
                    if p is None:
                        p = imgs[k] ** e
                        powers[k][e] = p
                    term = term * p
            result = result + term
        return result

    def embed(self, target_vars: Sequence[str]) -> "Poly":
        """Coefficient extension into a ring containing all our variables."""
        target_vars = tuple(target_vars)
        idx = []
        for v in self.vars:
            if v not in target_vars:
                raise VariableMismatch(f"{v!r} not among {target_vars}")
            idx.append(target_vars.index(v))
        out = {}
        for exp, c in self.terms.items():
            e = [0] * len(target_vars)
            for k, j in zip(exp, idx):
                e[j] = k
            out[tuple(e)] = c
        return Poly(target_vars, out)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(self.vars, exp):
                if e:
                    term *= Fraction(values[v]) ** e
            total += term
        return total

    # -- equality, hashing, printing ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={self.vars})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive-descent parser for ``+ - * / ^`` and parentheses.

    ``/`` is only allowed with a rational constant as divisor.
    """

    def __init__(self, text: str, vars: tuple):
        self.text = text
        self.vars = vars
        self.tokens = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif name:
                self.tokens.append(("name", name))
            elif op.strip():
                self.tokens.append(("op", op))
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"cannot parse polynomial {self.text!r}: {msg}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty input")
        p = self.expr()
        if self.pos != len(self.tokens):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        kind, val = self.peek()
        sign = 1
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Poly:
        p = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            q = self.power()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.error("division only by nonzero constants")
                p = p * (1 / q.constant_value())
        return p

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.error("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(val, self.vars)
        if kind == "name":
            if val not in self.vars:
                self.error(f"unknown variable {val!r} (ring variables {self.vars})")
            return Poly.var(val, self.vars)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                self.error("missing ')'")
            return p
        if (kind, val) == ("op", "-"):
            return -self.atom()
        self.error(f"unexpected token {val!r}")


def poly(text: str | Scalar | Poly, vars: Iterable[str] = ()) -> Poly:
    """Convenience coercion: strings are parsed, scalars become constants."""
    vars = tuple(vars)
    if isinstance(text, Poly):
        if text.vars != vars:
            raise VariableMismatch(f"variables {text.vars} vs {vars}")
        return text
    if isinstance(text, (int, Fraction)):
        return Poly.const(text, vars)
    return Poly.parse(text, vars)
