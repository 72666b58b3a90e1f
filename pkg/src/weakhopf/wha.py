"""Weak bialgebras and weak Hopf algebras given by structure constants.

A structure on a based space ``H`` of dimension ``d`` is the four maps
``mu: H⊗H -> H``, ``eta: k -> H``, ``delta: H -> H⊗H``, ``eps: H -> k``.
Construction never validates; call :func:`verify_weak_bialgebra` (or use
``H.report``) to run the axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import NotWeakBialgebra, ShapeMismatch
from .linalg import (
    K,
    DenseMap,
    LinMap,
    Space,
    compose,
    equal_maps,
    ident,
    solve_linear,
    tensor,
    twist,
)
from .report import AxiomReport
from .scalars import QQ, Field


@dataclass(frozen=True, eq=False)
class WeakBialgebra:
    field: Field
    mu: LinMap
    eta: LinMap
    delta: LinMap
    eps: LinMap
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        d = self.mu.codomain.dim
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(d)))
        object.__setattr__(self, "labels", tuple(self.labels))
        H = Space((d,))
        shapes = [
            (self.mu, H @ H, H, "mu"),
            (self.eta, K, H, "eta"),
            (self.delta, H, H @ H, "delta"),
            (self.eps, H, K, "eps"),
        ]
        for m, dom, cod, what in shapes:
            if m.domain.dim != dom.dim or m.codomain.dim != cod.dim:
                raise ShapeMismatch(f"{what} has shape {m.domain}->{m.codomain}, expected {dom}->{cod}")
        if len(self.labels) != d:
            raise ShapeMismatch(f"{len(self.labels)} labels for a {d}-dimensional space")
        # normalise factorizations so every map sees H = Space((d,))
        object.__setattr__(self, "mu", _on(self.mu, H @ H, H))
        object.__setattr__(self, "eta", _on(self.eta, K, H))
        object.__setattr__(self, "delta", _on(self.delta, H, H @ H))
        object.__setattr__(self, "eps", _on(self.eps, H, K))

    # -- basics -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def space(self) -> Space:
        return Space((self.dim,))

    @cached_property
    def id(self) -> LinMap:
        return ident(self.space, self.field)

    @cached_property
    def tw(self) -> LinMap:
        return twist(self.space, self.space, self.field)

    @cached_property
    def mu_op(self) -> LinMap:
        return compose(self.mu, self.tw)

    @cached_property
    def delta_op(self) -> LinMap:
        return compose(self.tw, self.delta)

    @cached_property
    def unit_coproduct(self) -> LinMap:
        """Δ(1) as a map k -> H⊗H."""
        return compose(self.delta, self.eta).dense()

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_vector(self, label_or_index) -> dict:
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        return {(i,): self.field.one}

    def multiply(self, x: dict, y: dict) -> dict:
        """Product of two sparse elements ``{(i,): c}``."""
        out: dict = {}
        for (i,), a in x.items():
            for (j,), b in y.items():
                for o, c in self.mu.image((i, j)).items():
                    out[o] = out.get(o, self.field.zero) + a * b * c
        return {k: v for k, v in out.items() if v != 0}

    @property
    def one(self) -> dict:
        return self.eta.image(())

    # -- derived structure ------------------------------------------------
    @cached_property
    def projections(self) -> "Projections":
        return _projections(self)

    @cached_property
    def report(self) -> AxiomReport:
        return verify_weak_bialgebra(self)

    def with_antipode(self, S: LinMap) -> "WeakHopfAlgebra":
        return WeakHopfAlgebra(
            self.field, self.mu, self.eta, self.delta, self.eps, self.labels, self.name,
            antipode=_on(S, self.space, self.space),
        )

    def renamed(self, name: str) -> "WeakBialgebra":
        return replace(self, name=name)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_tables(
        cls,
        labels: Sequence[str],
        mu: Mapping,
        eta: Mapping,
        delta: Mapping,
        eps: Mapping,
        field: Field = QQ,
        antipode: Mapping | None = None,
        name: str = "",
    ):
        """Build from sparse tables keyed by basis indices.

        ``mu[(i, j)] = {k: c}``, ``eta = {k: c}``, ``delta[i] = {(j, k): c}``,
        ``eps = {i: c}``, ``antipode[i] = {j: c}``.
        """
        d = len(labels)
        H = Space((d,))
        muM = DenseMap.from_images(H @ H, H, lambda ij: _keys1(mu.get(ij, {})), field)
        etaM = DenseMap.from_images(K, H, [_keys1(eta)], field)
        deltaM = DenseMap.from_images(H, H @ H, lambda i: delta.get(i[0], {}), field)
        epsM = DenseMap.from_images(H, K, lambda i: ({(): eps[i[0]]} if eps.get(i[0], 0) != 0 else {}), field)
        base = WeakBialgebra(field, muM, etaM, deltaM, epsM, tuple(labels), name)
        if antipode is None:
            return base
        S = DenseMap.from_images(H, H, lambda i: _keys1(antipode.get(i[0], {})), field)
        return base.with_antipode(S)


@dataclass(frozen=True, eq=False, kw_only=True)
class WeakHopfAlgebra(WeakBialgebra):
    antipode: LinMap

    @cached_property
    def antipode_report(self) -> AxiomReport:
        return verify_antipode(self, self.antipode)

    def without_antipode(self) -> WeakBialgebra:
        return WeakBialgebra(self.field, self.mu, self.eta, self.delta, self.eps, self.labels, self.name)


def _keys1(vec: Mapping) -> dict:
    return {(k if isinstance(k, tuple) else (k,)): v for k, v in vec.items()}


def _on(m: LinMap, dom: Space, cod: Space) -> LinMap:
    if m.domain.factor_dims == dom.factor_dims and m.codomain.factor_dims == cod.factor_dims:
        return m
    return m.dense().with_spaces(dom, cod)


# ---------------------------------------------------------------------------
# Projections


class Projections(NamedTuple):
    right: LinMap  # ⊓ᴿ: a ↦ 1₁ ε(a 1₂)
    left: LinMap  # ⊓ᴸ: a ↦ ε(1₁ a) 1₂
    right_bar: LinMap  # ⊓̄ᴿ: a ↦ 1₁ ε(1₂ a)
    left_bar: LinMap  # ⊓̄ᴸ: a ↦ ε(a 1₁) 1₂


def _projections(H: WeakBialgebra) -> Projections:
    I, mu, eps, tw = H.id, H.mu, H.eps, H.tw
    d1 = H.unit_coproduct
    right = compose(tensor(I, eps), tensor(I, mu), tensor(tw, I), tensor(I, d1))
    left = compose(tensor(eps, I), tensor(mu, I), tensor(I, tw), tensor(d1, I))
    right_bar = compose(tensor(I, eps), tensor(I, mu), tensor(d1, I))
    left_bar = compose(tensor(eps, I), tensor(mu, I), tensor(I, d1))
    return Projections(*(p.dense() for p in (right, left, right_bar, left_bar)))


def projections(H: WeakBialgebra, check: bool = True) -> Projections:
    """The four idempotents ⊓ᴿ, ⊓ᴸ, ⊓̄ᴿ, ⊓̄ᴸ (raises if H is not a weak bialgebra)."""
    if check and not H.report.passed:
        raise NotWeakBialgebra(f"{H.name or 'algebra'} is not a weak bialgebra", H.report)
    return H.projections


def convolve(f: LinMap, g: LinMap, H: WeakBialgebra) -> LinMap:
    """f ∗ g = μ (f ⊗ g) Δ."""
    for m in (f, g):
        if m.domain.dim != H.dim or m.codomain.dim != H.dim:
            raise ShapeMismatch("convolution needs endomorphisms of H")
    return compose(H.mu, tensor(_on(f, H.space, H.space), _on(g, H.space, H.space)), H.delta)


def convolve3(f: LinMap, g: LinMap, h: LinMap, H: WeakBialgebra) -> LinMap:
    """f ∗ g ∗ h through the double coproduct."""
    I = H.id
    return compose(
        H.mu, tensor(H.mu, I), tensor(f, g, h), tensor(H.delta, I), H.delta
    )


def eta_eps(H: WeakBialgebra) -> LinMap:
    return compose(H.eta, H.eps).dense()


# ---------------------------------------------------------------------------
# Verification


def verify_weak_bialgebra(H: WeakBialgebra, target: str | None = None) -> AxiomReport:
    rep = AxiomReport(target or H.name or "weak bialgebra", field=H.field)
    I, mu, eta, delta, eps, tw = H.id, H.mu, H.eta, H.delta, H.eps, H.tw
    L = H.labels
    rep.derived["dims"] = {"H": H.dim}

    rep.add("unit-left", equal_maps(compose(mu, tensor(eta, I)), I), L)
    rep.add("unit-right", equal_maps(compose(mu, tensor(I, eta)), I), L)
    rep.add("associativity", equal_maps(compose(mu, tensor(mu, I)), compose(mu, tensor(I, mu))), L)
    rep.add("counit-left", equal_maps(compose(tensor(eps, I), delta), I), L)
    rep.add("counit-right", equal_maps(compose(tensor(I, eps), delta), I), L)
    rep.add(
        "coassociativity",
        equal_maps(compose(tensor(delta, I), delta), compose(tensor(I, delta), delta)),
        L,
    )
    rep.add(
        "delta-multiplicative",
        equal_maps(compose(delta, mu), compose(tensor(mu, mu), tensor(I, tw, I), tensor(delta, delta))),
        L,
    )
    d1 = H.unit_coproduct
    delta2_unit = compose(tensor(delta, I), d1)
    rep.add(
        "delta-unit-left",
        equal_maps(compose(tensor(I, mu, I), tensor(d1, d1)), delta2_unit),
    )
    rep.add(
        "delta-unit-right",
        equal_maps(compose(tensor(I, H.mu_op, I), tensor(d1, d1)), delta2_unit),
    )
    eps3 = compose(eps, mu, tensor(mu, I))
    eps_l = rep.add(
        "eps-multiplicative-left",
        equal_maps(compose(tensor(eps, eps), tensor(mu, mu), tensor(I, delta, I)), eps3),
        L,
    )
    eps_r = rep.add(
        "eps-multiplicative-right",
        equal_maps(compose(tensor(eps, eps), tensor(mu, mu), tensor(I, H.delta_op, I)), eps3),
        L,
    )
    P = H.projections
    alt_r = rep.add(
        "alt-right",
        equal_maps(
            compose(tensor(eps, I), tensor(mu, I), tensor(I, tw), tensor(I, delta)),
            compose(mu, tensor(P.right, I)),
        ),
        L,
    )
    alt_l = rep.add(
        "alt-left",
        equal_maps(compose(tensor(eps, I), tensor(mu, I), tensor(I, delta)), compose(mu, tensor(P.left_bar, I))),
        L,
    )
    rep.add(
        "eps-alt-agreement",
        (eps_l and eps_r) == (alt_r and alt_l),
        note="ε-multiplicativity and the alternative axioms give the same verdict",
    )
    return rep


def verify_projections(H: WeakBialgebra) -> AxiomReport:
    """Idempotency of the projections and their standard identities."""
    rep = AxiomReport(f"projections of {H.name or 'algebra'}", field=H.field)
    P = H.projections
    I, mu, eps, tw, delta = H.id, H.mu, H.eps, H.tw, H.delta
    L = H.labels
    for nm, p in zip(("right", "left", "right-bar", "left-bar"), P):
        rep.add(f"idempotent-{nm}", equal_maps(compose(p, p), p), L)
    rep.add(
        "unit-coproduct-left",
        equal_maps(compose(tensor(mu, I), tensor(I, tw), tensor(H.unit_coproduct, I)), compose(tensor(I, P.left), delta)),
        L,
    )
    rep.add(
        "counit-left-projection",
        equal_maps(compose(tensor(eps, I), tensor(mu, I), tensor(I, tw), tensor(delta, I)), compose(mu, tensor(I, P.left))),
        L,
    )
    rep.add("conv-right-right", equal_maps(convolve(P.right, P.right, H), P.right), L)
    rep.add("conv-left-left", equal_maps(convolve(P.left, P.left, H), P.left), L)
    rep.add("conv-id-right", equal_maps(convolve(I, P.right, H), I), L)
    rep.add("conv-left-id", equal_maps(convolve(P.left, I, H), I), L)
    return rep


def verify_antipode(H: WeakBialgebra, S: LinMap) -> AxiomReport:
    rep = AxiomReport(f"antipode of {H.name or 'algebra'}", field=H.field)
    if S.domain.dim != H.dim or S.codomain.dim != H.dim:
        raise ShapeMismatch("antipode must be an endomorphism")
    S = _on(S, H.space, H.space)
    P = H.projections
    L = H.labels
    rep.add("S*id=PiR", equal_maps(convolve(S, H.id, H), P.right), L)
    rep.add("id*S=PiL", equal_maps(convolve(H.id, S, H), P.left), L)
    rep.add("S*id*S=S", equal_maps(convolve3(S, H.id, S, H), S), L)
    return rep


# ---------------------------------------------------------------------------
# Antipode synthesis


@dataclass
class NoAntipode:
    """The linear system for Z is inconsistent."""

    rank_deficit: int
    rank: int
    unknowns: int
    report: AxiomReport | None = None

    def __bool__(self):
        return False


def _convolution_rows(H: WeakBialgebra, target: LinMap, z_on_right: bool):
    """Rows of the linear system id∗Z = target (z_on_right) or Z∗id = target.

    The unknown z[r, c] (coefficient of basis r in Z(b_c)) has index r*d + c.
    """
    d = H.dim
    F = H.field
    T = target.dense().matrix
    rows, rhs = [], []
    for c in range(d):
        acc: dict = {}  # (k, var) -> coeff
        for (i, j), dc in H.delta.image((c,)).items():
            # id∗Z: μ(b_i ⊗ Z b_j); Z∗id: μ(Z b_i ⊗ b_j)
            col = j if z_on_right else i
            for r in range(d):
                pair = (i, r) if z_on_right else (r, j)
                for (k,), mc in H.mu.image(pair).items():
                    key = (k, r * d + col)
                    acc[key] = acc.get(key, F.zero) + dc * mc
        per_k: dict = {}
        for (k, var), v in acc.items():
            if v != 0:
                per_k.setdefault(k, {})[var] = v
        for k in range(d):
            rows.append(per_k.get(k, {}))
            rhs.append(T[k, c])
    return rows, rhs


def solve_antipode(H: WeakBialgebra):
    """Find Z with id∗Z = ⊓ᴸ and Z∗id = ⊓ᴿ, then S = Z∗id∗Z.

    Returns a :class:`WeakHopfAlgebra` or a falsy :class:`NoAntipode`.
    """
    P = H.projections
    d = H.dim
    r1, b1 = _convolution_rows(H, P.left, True)
    r2, b2 = _convolution_rows(H, P.right, False)
    sol = solve_linear(r1 + r2, b1 + b2, d * d, H.field)
    if not sol.consistent:
        return NoAntipode(sol.rank_deficit, sol.rank, d * d)
    Zm = np.array(sol.solution, dtype=object).reshape(d, d)
    Z = DenseMap(H.space, H.space, Zm, H.field)
    S = convolve3(Z, H.id, Z, H).dense()
    out = H.with_antipode(S)
    rep = out.antipode_report
    if not rep.passed:  # cannot happen if the algebra verifies
        return NoAntipode(0, sol.rank, d * d, rep)
    return out


# ---------------------------------------------------------------------------
# Duality


def dual(H: WeakBialgebra, check: bool = True) -> WeakBialgebra:
    """The linear dual with the transposed structure, in the dual basis."""
    sp = H.space
    mu = H.delta.dense().transpose(sp @ sp, sp)
    eta = H.eps.dense().transpose(K, sp)
    delta = H.mu.dense().transpose(sp, sp @ sp)
    eps = H.eta.dense().transpose(sp, K)
    labels = tuple(_dual_label(l) for l in H.labels)
    name = _dual_label(H.name) if H.name else ""
    out = WeakBialgebra(H.field, mu, eta, delta, eps, labels, name)
    if isinstance(H, WeakHopfAlgebra):
        out = out.with_antipode(H.antipode.dense().transpose(sp, sp))
    if check and not out.report.passed:
        raise NotWeakBialgebra("dual failed verification", out.report)
    return out


def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"
