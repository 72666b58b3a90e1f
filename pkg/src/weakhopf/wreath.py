"""The weak wreath product B⊗_ψ A of a weakly invertible, weakly comonoidal
weak distributive law, and its antipode."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InternalAxiomFailure, LemmaConditionFailed, PreconditionFailed
from .linalg import (
    LinMap,
    SplitIdempotent,
    compose,
    equal_maps,
    ident,
    permute,
    rank,
    split_idempotent,
    tensor,
    trace,
    twist,
)
from .report import AxiomReport
from .wdl import WeakDistLaw, tensor_coalgebra, verify_law
from .wha import (
    WeakBialgebra,
    WeakHopfAlgebra,
    convolve,
    convolve3,
    verify_antipode,
    verify_weak_bialgebra,
)


@dataclass(frozen=True, eq=False)
class WreathProduct:
    law: WeakDistLaw
    split: SplitIdempotent
    product: WeakBialgebra
    report: AxiomReport

    @property
    def iota(self) -> LinMap:
        return self.split.section

    @property
    def pi(self) -> LinMap:
        return self.split.retraction

    @property
    def dim(self) -> int:
        return self.product.dim

    @cached_property
    def antipode(self) -> WeakHopfAlgebra:
        return build_wreath_antipode(self)

    def element(self, b: int | str, a: int | str) -> dict:
        """π(b⊗a) as a sparse vector in the product."""
        B, A = self.law.B, self.law.A
        bi = b if isinstance(b, int) else B.index(b)
        ai = a if isinstance(a, int) else A.index(a)
        return self.pi.image((bi, ai))


def _product_labels(law: WeakDistLaw, split: SplitIdempotent) -> tuple:
    """Label each image vector by the basis tensor it equals, or by its pivot class."""
    labels = []
    for j, p in enumerate(split.pivots):
        col = split.section.image((j,))
        if len(col) == 1 and next(iter(col.values())) == law.field.one:
            labels.append(law.basis_label(next(iter(col))))
        else:
            labels.append(f"[{law.basis_label(law.BA.multi(p))}]")
    if len(set(labels)) != len(labels):
        labels = [f"{l}#{i}" for i, l in enumerate(labels)]
    return tuple(labels)


def build_wreath(law: WeakDistLaw, name: str | None = None) -> WreathProduct:
    """Split ψφ and induce the algebra, coalgebra and weak bialgebra on its image."""
    pre = verify_law(law)
    if not pre.passed:
        raise PreconditionFailed(f"law {law.name!r} fails: {pre.summary()}", pre)
    A, B, F = law.A, law.B, law.field
    split = split_idempotent(law.e)
    iota, pi = split.section, split.retraction
    IA, IB = A.id, B.id
    dBA, eBA = law.coalgebra_BA
    mu = compose(pi, tensor(B.mu, A.mu), tensor(IB, law.psi, IA), tensor(iota, iota)).dense()
    eta = compose(pi, tensor(B.eta, A.eta)).dense()
    delta = compose(tensor(pi, pi), dBA, iota).dense()
    eps = compose(eBA, iota).dense()
    product = WeakBialgebra(F, mu, eta, delta, eps, _product_labels(law, split), name or f"{B.name}#{A.name}")
    via_psi = compose(pi, law.psi, tensor(A.eta, B.eta))
    rep = verify_weak_bialgebra(product, f"product of {law.name}")
    rep.add("unit-via-psi", equal_maps(via_psi, eta))
    rep.derived["dims"] = {"A": A.dim, "B": B.dim, "product": product.dim}
    rep.derived["ranks"] = {"psi_phi": rank(law.e)}
    if F.characteristic == 0:
        rep.derived["ranks"]["trace_psi_phi"] = F.format(trace(law.e))
    if not rep.passed:
        raise InternalAxiomFailure(f"product of {law.name!r} is not a weak bialgebra", rep)
    return WreathProduct(law, split, product, rep)


def wreath_Z(w: WreathProduct) -> LinMap:
    """Z = π ψ (S⊗S) tw ι."""
    law = w.law
    A, B = law.A, law.B
    return compose(
        w.pi, law.psi, tensor(A.antipode, B.antipode), twist(B.space, A.space, law.field), w.iota
    ).dense()


def build_wreath_antipode(w: WreathProduct) -> WeakHopfAlgebra:
    law = w.law
    if not (isinstance(law.A, WeakHopfAlgebra) and isinstance(law.B, WeakHopfAlgebra)):
        raise PreconditionFailed("both factors need antipodes")
    W = w.product
    Z = wreath_Z(w)
    P = W.projections
    rep = AxiomReport(f"antipode of {W.name}", field=W.field)
    rep.add("id*Z=PiL", equal_maps(convolve(W.id, Z, W), P.left), W.labels)
    rep.add("Z*id=PiR", equal_maps(convolve(Z, W.id, W), P.right), W.labels)
    if not rep.passed:
        raise LemmaConditionFailed("Z fails the convolution conditions", rep)
    S = convolve3(Z, W.id, Z, W).dense()
    out = W.with_antipode(S)
    rep.extend(verify_antipode(out, S))
    if not rep.passed:
        raise LemmaConditionFailed("S = Z∗id∗Z is not an antipode", rep)
    return out


# ---------------------------------------------------------------------------
# Consistency suite


def _delta_unit_forms(w: WreathProduct):
    law = w.law
    A, B = law.A, law.B
    pp = tensor(w.pi, w.pi)
    dAB, _ = law.coalgebra_AB
    dBA, _ = law.coalgebra_BA
    via_psi = compose(pp, dBA, law.psi, tensor(A.eta, B.eta))
    direct = compose(pp, dBA, tensor(B.eta, A.eta))
    split = compose(pp, tensor(law.psi, law.psi), dAB, tensor(A.eta, B.eta))
    return via_psi, direct, split


def _unit_diagram_right_column(law: WeakDistLaw) -> LinMap:
    """(ψφ)^{⊗3} ∘ [BA ⊗ (μ⊗μ)(B⊗ψ⊗A) ⊗ BA] ∘ (ψφ)^{⊗4} on (B⊗A)^{⊗4}."""
    A, B = law.A, law.B
    IB, IA = B.id, A.id
    e = law.e
    mult = compose(tensor(B.mu, A.mu), tensor(IB, law.psi, IA))
    return compose(tensor(e, e, e), tensor(IB, IA, mult, IB, IA), tensor(e, e, e, e))


def diagram_unit_left(law: WeakDistLaw):
    """Outer paths of the (Δ(1)⊗1)(1⊗Δ(1)) diagram, both maps k -> (B⊗A)^{⊗3}."""
    A, B = law.A, law.B
    IA, IB = A.id, B.id
    dAB, _ = law.coalgebra_AB
    dBA, _ = law.coalgebra_BA
    IBA = ident(law.BA, law.field)
    e = law.e
    top = compose(
        _unit_diagram_right_column(law),
        tensor(IB, IA, law.psi, IBA, IBA),
        tensor(law.psi, IA, IB, IBA, IBA),
        tensor(dAB, dBA),
        tensor(A.eta, B.eta, B.eta, A.eta),
    )
    bottom = compose(tensor(e, e, e), tensor(dBA, IBA), dBA, tensor(B.eta, A.eta))
    return top, bottom


def diagram_unit_right(law: WeakDistLaw):
    """Outer paths of the (1⊗Δ(1))(Δ(1)⊗1) diagram, both maps k -> (B⊗A)^{⊗3}."""
    A, B = law.A, law.B
    IA, IB = A.id, B.id
    F = law.field
    SA, SB = A.space, B.space
    dBA, _ = law.coalgebra_BA
    IBA = ident(law.BA, F)
    e = law.e
    # Δ_{A⊗B⊗B⊗A} = shuffle ∘ (Δ⊗Δ⊗Δ⊗Δ)
    shuffle = permute([SA, SA, SB, SB, SB, SB, SA, SA], [0, 2, 4, 6, 1, 3, 5, 7], F)
    d4 = compose(shuffle, tensor(A.delta, B.delta, B.delta, A.delta))
    top = compose(
        _unit_diagram_right_column(law),
        tensor(IBA, IBA, law.psi, IB, IA),
        tensor(law.psi, IB, IA, IA, IB, IB, IA),
        d4,
        tensor(A.eta, B.eta, B.eta, A.eta),
    )
    bottom = compose(tensor(e, e, e), tensor(IBA, dBA), dBA, tensor(B.eta, A.eta))
    return top, bottom


def _common_counit_path(law: WeakDistLaw) -> LinMap:
    """Shared down-then-right path (B⊗A)^{⊗2} -> B⊗A of the two counit diagrams."""
    A, B = law.A, law.B
    IA, IB = A.id, B.id
    dAB, _ = law.coalgebra_AB
    phi = law.phi
    return compose(
        law.psi,
        tensor(A.eps, IA, IB),
        tensor(IA, B.eps, IA, IB),
        tensor(IA, B.mu, IA, B.mu),
        tensor(phi, IB, IA, IB, IB),
        tensor(IB, A.mu, IB, IA, IB, IB),
        tensor(IB, IA, dAB, IB),
        tensor(IB, IA, IA, B.eta, IB),
        tensor(IB, IA, phi),
    )


def diagram_counit(w: WreathProduct):
    """Both sides of (ε⊗W)(μ⊗W)(W⊗Δ) = (ε⊗W)(μ⊗μ)(W⊗Δη⊗W) precomposed with π⊗π,
    each compared against π∘C for the shared path C."""
    W = w.product
    I = W.id
    pp = tensor(w.pi, w.pi)
    lhs = compose(tensor(W.eps, I), tensor(W.mu, I), tensor(I, W.delta), pp)
    rhs = compose(tensor(W.eps, I), tensor(W.mu, W.mu), tensor(I, W.unit_coproduct, I), pp)
    common = compose(w.pi, _common_counit_path(w.law))
    return lhs, rhs, common


def _antipode_path(law: WeakDistLaw) -> LinMap:
    """(μ⊗A)(B⊗ψ)(B⊗A⊗S)(B⊗⊓ᴸ⊗B)(B⊗tw)(Δ⊗A)ψφ on B⊗A."""
    A, B = law.A, law.B
    IA, IB = A.id, B.id
    return compose(
        tensor(B.mu, IA),
        tensor(IB, law.psi),
        tensor(IB, IA, B.antipode),
        tensor(IB, A.projections.left, IB),
        tensor(IB, twist(B.space, A.space, law.field)),
        tensor(B.delta, IA),
        law.e,
    )


def diagram_antipode(w: WreathProduct):
    """(id∗Z)π, ⊓ᴸπ and the shared path π P, all maps B⊗A -> W."""
    W = w.product
    Z = wreath_Z(w)
    conv = compose(convolve(W.id, Z, W), w.pi)
    proj = compose(W.projections.left, w.pi)
    common = compose(w.pi, _antipode_path(w.law))
    return conv, proj, common


def wreath_consistency_suite(w: WreathProduct) -> AxiomReport:
    law = w.law
    W = w.product
    rep = AxiomReport(f"consistency of {W.name}", field=W.field)
    pp = tensor(w.pi, w.pi)
    dBA, _ = law.coalgebra_BA
    rep.add("quotient-comultiplicative", equal_maps(compose(pp, dBA, law.e), compose(pp, dBA)))
    f1, f2, f3 = _delta_unit_forms(w)
    rep.add("delta-unit-direct", equal_maps(f1, f2))
    rep.add("delta-unit-split", equal_maps(f1, f3))
    rep.add("delta-unit-product", equal_maps(W.unit_coproduct, f2))
    full = verify_weak_bialgebra(W)
    rep.add("product-alt-right", full["alt-right"].passed)
    rep.add("product-alt-left", full["alt-left"].passed)
    rep.add("diagram-unit-left", equal_maps(*diagram_unit_left(law)))
    rep.add("diagram-unit-right", equal_maps(*diagram_unit_right(law)))
    lhs, rhs, common = diagram_counit(w)
    rep.add("diagram-counit-rhs", equal_maps(rhs, common))
    rep.add("diagram-counit-lhs", equal_maps(lhs, common))
    if isinstance(law.A, WeakHopfAlgebra) and isinstance(law.B, WeakHopfAlgebra):
        conv, proj, common = diagram_antipode(w)
        rep.add("diagram-antipode-left", equal_maps(conv, common))
        rep.add("diagram-antipode-right", equal_maps(proj, common))
    else:
        rep.add("diagram-antipode-left", True, note="vacuous: a factor has no antipode")
        rep.add("diagram-antipode-right", True, note="vacuous: a factor has no antipode")
    return rep


def same_structure(X: WeakBialgebra, Y: WeakBialgebra) -> bool:
    """Identical structure constants in the given bases."""
    if X.dim != Y.dim:
        return False
    return all(
        equal_maps(f, g) for f, g in ((X.mu, Y.mu), (X.eta, Y.eta), (X.delta, Y.delta), (X.eps, Y.eps))
    )


@dataclass
class PhiIndependence:
    vacuous: bool
    identical: bool
    note: str = ""

    def __bool__(self):
        return self.identical


def phi_independence(law: WeakDistLaw, other_phi: LinMap | None) -> PhiIndependence:
    """Compare the products built from ``law.phi`` and ``other_phi``."""
    if other_phi is None:
        return PhiIndependence(True, True, "no second weak inverse")
    alt = law.with_phi(other_phi)
    if equal_maps(alt.phi, law.phi):
        return PhiIndependence(True, True, "second weak inverse coincides with the first")
    if not verify_law(alt).passed:
        return PhiIndependence(True, True, "second candidate is not a valid weak inverse")
    p1, p2 = build_wreath(law).product, build_wreath(alt).product
    return PhiIndependence(False, same_structure(p1, p2), "distinct weak inverses compared")
