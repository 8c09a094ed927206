"""Cocontinuous monoidal functors out of the affine line, encoded as ring maps.

A ring map ``t -> p(s)`` induces extension of scalars
``Q[t]-Mod -> Q[s]-Mod``.  Its *base* is the composite with the structure
morphism (here the coefficient inclusion) and its *type* is the
endomorphism of the unit read off from ``F(+^* i_! 1)``.  The checks here
confirm that the functor is recovered as evaluation at its type after the
base, also one variable at a time for several variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import modcat
from .modcat import (
    EndoPair,
    FpModule,
    RingMap,
    TypeWitness,
    base_change,
    extend_coefficients,
    external_product,
    iso_test,
    plus_shriek,
    restrict_plus,
    tensor_a1,
    tensor_over,
    underlying,
)
from .polyalg import linalg
from .polyalg.matrix import PolyMatrix
from .polyalg.poly import Poly, VariableMismatch, poly
from .polyalg.snf import in_column_span


@dataclass(frozen=True)
class MonFunctorSpec:
    """Extension of scalars along ``phi``."""

    phi: RingMap

    @classmethod
    def build(cls, images, source: Iterable[str] = ("t",), target: Iterable[str] = ("s",)) -> "MonFunctorSpec":
        if isinstance(images, (str, int, Fraction, Poly)):
            images = [images]
        return cls(RingMap.build(source, target, images))

    @property
    def source(self) -> tuple:
        return tuple(self.phi.source_vars)

    @property
    def target(self) -> tuple:
        return tuple(self.phi.target_vars)

    def apply(self, M: FpModule) -> FpModule:
        return base_change(M, self.phi)

    def then(self, other: "MonFunctorSpec") -> "MonFunctorSpec":
        """The composite functor: first ``self``, then ``other``."""
        return MonFunctorSpec(self.phi.then(other.phi))

    def to_json(self) -> dict:
        return {"source": list(self.source), "target": list(self.target), "images": [str(p) for p in self.phi.images]}

    @classmethod
    def from_json(cls, data) -> "MonFunctorSpec":
        return cls(RingMap.build(data["source"], data["target"], data["images"]))


@dataclass(frozen=True)
class AnSpec:
    """``n`` types ``p_1..p_n`` over the target ring; sends ``t_k -> p_k``."""

    n: int
    images: tuple
    target: tuple = ("s",)

    def __post_init__(self):
        if len(self.images) != self.n:
            raise ValueError(f"need {self.n} images, got {len(self.images)}")

    @classmethod
    def build(cls, images: Sequence, target: Iterable[str] = ("s",)) -> "AnSpec":
        target = tuple(target)
        return cls(len(images), tuple(poly(p, target) for p in images), target)

    @property
    def source(self) -> tuple:
        return tuple(f"t{k + 1}" for k in range(self.n))

    def as_functor(self) -> MonFunctorSpec:
        return MonFunctorSpec(RingMap(self.source, self.target, self.images))


def _fresh(avoid: Iterable[str], stem: str) -> str:
    avoid = set(avoid)
    name, k = stem, 0
    while name in avoid:
        k += 1
        name = f"{stem}{k}"
    return name


# ---------------------------------------------------------------------------
# type and base


def type_module(spec: MonFunctorSpec) -> FpModule:
    """``F^N(+^* i_! 1)``: the functor applied in the first variable of ``Q[t1,t2]/(t1 - t2)``.

    The second variable stays as a passive shape variable (named ``u`` or a
    fresh variant) so the result lives over ``Q[target, u]``.
    """
    if len(spec.source) != 1:
        raise ValueError("type extraction needs a one-variable source")
    u = _fresh(spec.target, "u")
    X = restrict_plus(FpModule.free(1, spec.source), ("t1", "t2"))
    ring = spec.target + (u,)
    images = {"t1": spec.phi.images[0].embed(ring), "t2": Poly.var(u, ring)}
    return FpModule(ring, X.generators, X.presentation.substitute(images, ring))


def extract_type(spec: MonFunctorSpec) -> TypeWitness:
    """Read off ``alpha`` from ``F^N(+^* i_! 1)`` and check that its restriction is the unit."""
    Y = type_module(spec)
    under = underlying(Y)
    base = under.module
    if base.generators != 1 or not base.presentation.is_zero():
        raise ArithmeticError("restriction of the type object is not the unit")
    return TypeWitness(spec.target, under.action[0, 0])


def extract_base(spec: MonFunctorSpec, check_ranks: Sequence[int] = (0, 1, 3)) -> RingMap:
    """``F o i_!`` as a ring map ``Q -> Q[target]``; verified on free modules."""
    base = RingMap((), spec.target, ())
    for r in check_ranks:
        V = FpModule.free(r, ())
        lhs = spec.apply(modcat.structure_i(V, spec.source[-1]) if len(spec.source) == 1 else extend_coefficients(V, spec.source))
        rhs = base_change(V, base)
        if not iso_test(lhs, rhs):
            raise ArithmeticError(f"base does not match the functor on free rank {r}")
    return base


def spec_from_type(w: TypeWitness, source: str = "t") -> MonFunctorSpec:
    """The functor ``ev_alpha o F_0^N`` as a ring map ``t -> alpha``."""
    return MonFunctorSpec(RingMap((source,), tuple(w.target_vars), (w.alpha,)))


# ---------------------------------------------------------------------------
# decomposition checks


@dataclass
class RouteComparison:
    direct: FpModule
    composite: FpModule
    agree: bool

    def to_json(self) -> dict:
        return {
            "direct": {"presentation": self.direct.presentation.to_strings(), "canonical": str(self.direct.canonical)},
            "composite": {"presentation": self.composite.presentation.to_strings(), "canonical": str(self.composite.canonical)},
            "agree": self.agree,
        }


def decompose(spec: MonFunctorSpec, M: FpModule) -> RouteComparison:
    """``F(M)`` directly and as ``ev_type(F_0^N(M))`` through the tensor route."""
    if len(M.ring) != 1 or M.ring != spec.source:
        raise VariableMismatch(f"module over {M.ring}, functor from {spec.source}")
    direct = spec.apply(M)
    w = extract_type(spec)
    var = _fresh(spec.target, M.ring[0])
    lifted = FpModule(M.ring, M.generators, M.presentation)
    if var != M.ring[0]:
        lifted = base_change(M, RingMap.build(M.ring, (var,), [var]))
    F0N = extend_coefficients(lifted, spec.target + (var,))
    composite = modcat.ev_alpha(F0N, w, route="tensor")
    return RouteComparison(direct, composite, iso_test(direct, composite))


def decompose_check(spec: MonFunctorSpec, M: FpModule) -> bool:
    return decompose(spec, M).agree


def ev_in_variable(M: FpModule, var: str, alpha: Poly, route: str = "tensor") -> FpModule:
    """Evaluate the variable ``var`` at ``alpha`` keeping every other variable passive.

    ``alpha`` is a polynomial in the remaining variables.
    """
    if var not in M.ring:
        raise VariableMismatch(f"{var!r} is not a variable of {M.ring}")
    rest = tuple(v for v in M.ring if v != var)
    alpha = alpha.embed(rest) if alpha.vars != rest else alpha
    if route == "substitution":
        images = {v: Poly.var(v, rest) for v in rest}
        images[var] = alpha
        return FpModule(rest, M.generators, M.presentation.substitute(images, rest))
    ring = rest + (var,)
    Mr = FpModule(ring, M.generators, M.presentation.substitute({v: Poly.var(v, ring) for v in M.ring}, ring))
    Y = TypeWitness(rest, alpha).module(var)
    names = (_fresh(ring, f"{var}_a"), _fresh(ring, f"{var}_b"))
    return underlying(plus_shriek(external_product(Mr, Y, names), var)).module


def an_decompose(spec: AnSpec, M: FpModule) -> RouteComparison:
    """Single-shot substitution versus evaluating ``t_1, ..., t_n`` one at a time."""
    if tuple(M.ring) != spec.source:
        raise VariableMismatch(f"module over {M.ring}, expected {spec.source}")
    direct = spec.as_functor().apply(M)
    if set(spec.target) & set(spec.source):
        raise ValueError("target and source variable names must differ")
    current = extend_coefficients(M, spec.target + spec.source)
    for k, var in enumerate(spec.source):
        current = ev_in_variable(current, var, spec.images[k], route="tensor")
    return RouteComparison(direct, current, iso_test(direct, current))


def an_decompose_check(spec: AnSpec, M: FpModule) -> bool:
    return an_decompose(spec, M).agree


@dataclass
class FactorizationReport:
    probes: list  # (beta, dim lhs, dim rhs)
    partial: list  # (beta, lhs canonical, rhs canonical)
    agree: bool
    evidence_only: bool = True

    def to_json(self) -> dict:
        return {
            "probes": [{"beta": str(b), "lhs": str(l), "rhs": str(r)} for b, l, r in self.probes],
            "partial": [{"beta": str(b), "lhs": str(l), "rhs": str(r)} for b, l, r in self.partial],
            "agree": self.agree,
            "evidenceOnly": self.evidence_only,
        }


def plus_star_factorization(M: FpModule, betas: Sequence = (0, 1, -2)) -> FactorizationReport:
    """``+^* M`` versus ``(1 x i)_! M`` tensored with ``+^* i_! 1`` over ``Q[t1, t2]``.

    No canonical form exists over two variables, so both sides are reduced
    by probes: ``t1, t2 -> beta`` (results over Q) and ``t2 -> beta``
    (results over ``Q[t1]``).  Agreement is evidence, not proof.
    """
    if len(M.ring) != 1:
        raise ValueError("module must be over one variable")
    ring = ("t1", "t2")
    lhs = restrict_plus(M, ring)
    X = FpModule(("t1",), M.generators, M.presentation.substitute({M.ring[0]: Poly.var("t1", ("t1",))}, ("t1",)))
    rhs = tensor_over(extend_coefficients(X, ring), restrict_plus(FpModule.free(1, M.ring), ring))
    probes, partial, ok = [], [], True
    for beta in betas:
        b = Fraction(beta)
        full = {"t1": Poly.const(b, ()), "t2": Poly.const(b, ())}
        l = FpModule((), lhs.generators, lhs.presentation.substitute(full, ()))
        r = FpModule((), rhs.generators, rhs.presentation.substitute(full, ()))
        probes.append((b, l.canonical, r.canonical))
        ok &= iso_test(l, r)
        part = {"t1": Poly.var("t1", ("t1",)), "t2": Poly.const(b, ("t1",))}
        l1 = FpModule(("t1",), lhs.generators, lhs.presentation.substitute(part, ("t1",)))
        r1 = FpModule(("t1",), rhs.generators, rhs.presentation.substitute(part, ("t1",)))
        partial.append((b, l1.canonical, r1.canonical))
        ok &= iso_test(l1, r1)
    return FactorizationReport(probes, partial, ok)


def plus_star_factorization_check(M: FpModule, betas: Sequence = (0, 1, -2)) -> bool:
    return plus_star_factorization(M, betas).agree


# ---------------------------------------------------------------------------
# projection formula


def _twisted_coequalizer(T: list, P: list, S: list, a: int, b: int) -> EndoPair:
    """``coker(T (x) 1 - 1 (x) P)`` with the endomorphism induced by ``1 (x) S``."""
    size = a * b
    if size == 0:
        return EndoPair.zero(0)
    TI = linalg.kron(T, linalg.identity(b))
    IP = linalg.kron(linalg.identity(a), P)
    IS = linalg.kron(linalg.identity(a), S)
    D = [[TI[i][j] - IP[i][j] for j in range(size)] for i in range(size)]
    q, section = linalg.cokernel(D, size, size)
    if not q:
        return EndoPair.zero(0)
    return EndoPair.from_rows(linalg.matmul(linalg.matmul(q, IS, size, size), section, size, len(q)))


def _eval_matrix(p: Poly, S: list) -> list:
    n = len(S)
    out = linalg.zeros(n, n)
    power = linalg.identity(n)
    for c in p.coeffs():
        for i in range(n):
            for j in range(n):
                out[i][j] += c * power[i][j]
        power = linalg.matmul(power, S, n, n)
    return out


def restrict_endo(spec: MonFunctorSpec, n: EndoPair) -> EndoPair:
    """``phi^* n = (W, p(S))``."""
    return EndoPair.from_rows(_eval_matrix(spec.phi.images[0], n.matrix()))


def extend_endo(spec: MonFunctorSpec, m: EndoPair) -> FpModule:
    """``phi_! (V, T)``, presented by ``p(s) I - T`` over ``Q[s]``."""
    return spec.apply(FpModule.from_endo(m, spec.source[0]))


@dataclass
class ProjectionReport:
    lhs: FpModule  # m (x)_{Q[t]} phi^* n with s acting through n
    rhs: FpModule  # phi_! m (x)_{Q[s]} n
    agree: bool

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs.canonical), "rhs": str(self.rhs.canonical), "agree": self.agree}


def projection(spec: MonFunctorSpec, m: EndoPair, n: EndoPair) -> ProjectionReport:
    """Projection isomorphism ``phi_! m (x) n = m (x) phi^* n`` for extension/restriction.

    Left side: linear-algebra coequalizer of ``T (x) 1`` and ``1 (x) p(S)``
    with ``s`` acting by ``1 (x) S``.  Right side: Day tensor of
    presentations over ``Q[s]``.
    """
    if len(spec.source) != 1 or len(spec.target) != 1:
        raise ValueError("projection check needs one-variable source and target")
    s = spec.target[0]
    pS = restrict_endo(spec, n)
    left = _twisted_coequalizer(m.matrix(), pS.matrix(), n.matrix(), m.dim, n.dim)
    lhs = FpModule.from_endo(left, s)
    rhs = tensor_a1(extend_endo(spec, m), FpModule.from_endo(n, s))
    return ProjectionReport(lhs, rhs, iso_test(lhs, rhs))


def projection_iso_check(spec: MonFunctorSpec, m: EndoPair, n: EndoPair) -> bool:
    return projection(spec, m, n).agree


def projection_literal_sides(spec: MonFunctorSpec, m: EndoPair, n: EndoPair) -> tuple:
    """The reading ``phi_!(m (x)_{Q[t]} phi^* n)`` versus ``phi_! m (x)_{Q[s]} n``.

    Kept to document that this reading is not an isomorphism in general.
    """
    t, s = spec.source[0], spec.target[0]
    inner = tensor_a1(FpModule.from_endo(m, t), FpModule.from_endo(restrict_endo(spec, n), t))
    lhs = spec.apply(inner)
    rhs = tensor_a1(extend_endo(spec, m), FpModule.from_endo(n, s))
    return lhs, rhs


# ---------------------------------------------------------------------------
# morphisms of types


@dataclass
class TypeMorphism:
    source: FpModule  # ev_alpha(M)
    target: FpModule  # ev_beta(M)
    matrix: PolyMatrix  # on generators: multiplication by q
    well_defined: bool


def type_morphism_transform(q, alpha: TypeWitness, beta: TypeWitness, M: FpModule) -> TypeMorphism:
    """``Id_M (x) q : ev_alpha(M) -> ev_beta(M)`` for an intertwiner ``q alpha = beta q``."""
    if alpha.target_vars != beta.target_vars:
        raise VariableMismatch("types over different rings")
    ring = tuple(alpha.target_vars)
    q = poly(q, ring)
    if q * alpha.alpha != beta.alpha * q:
        raise ValueError(f"{q} does not intertwine {alpha.alpha} and {beta.alpha}")
    src = modcat.ev_alpha(M, alpha)
    tgt = modcat.ev_alpha(M, beta)
    g = M.generators
    mat = PolyMatrix.identity(g, ring).scale(q)
    image = mat @ src.presentation
    if len(ring) <= 1:
        ok = all(in_column_span(tgt.presentation, image.column(j)) for j in range(image.cols))
    else:
        ok = q.is_zero() or alpha.alpha == beta.alpha
    return TypeMorphism(src, tgt, mat, ok)
