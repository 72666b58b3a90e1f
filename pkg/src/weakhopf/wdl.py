"""Weak distributive laws ψ: A⊗B -> B⊗A, weak inverses and weak comonoidality.

Spaces are factored as ``A⊗B = Space((dim A, dim B))`` and ``B⊗A`` likewise, so
expressions such as ``B⊗ψ⊗A`` are plain tensor products of maps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .linalg import (
    DenseMap,
    LinMap,
    Space,
    compose,
    equal_maps,
    ident,
    permute,
    rank,
    solve_linear,
    tensor,
    trace,
    twist,
)
from .report import AxiomReport
from .wha import WeakBialgebra, WeakHopfAlgebra, _on


def tensor_coalgebra(X: WeakBialgebra, Y: WeakBialgebra) -> tuple[LinMap, LinMap]:
    """Δ_{X⊗Y} = (X⊗tw⊗Y)(Δ⊗Δ) and ε_{X⊗Y} = ε⊗ε."""
    f = X.field
    delta = compose(
        tensor(X.id, twist(X.space, Y.space, f), Y.id), tensor(X.delta, Y.delta)
    )
    return delta, tensor(X.eps, Y.eps)


def _unit_map(X: WeakBialgebra, Y: WeakBialgebra) -> LinMap:
    return tensor(X.eta, Y.eta)


@dataclass(frozen=True, eq=False)
class WeakDistLaw:
    A: WeakBialgebra
    B: WeakBialgebra
    psi: LinMap
    phi: LinMap | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "psi", _on(self.psi, self.AB, self.BA))
        if self.phi is not None:
            object.__setattr__(self, "phi", _on(self.phi, self.BA, self.AB))

    @property
    def field(self):
        return self.A.field

    @property
    def AB(self) -> Space:
        return self.A.space @ self.B.space

    @property
    def BA(self) -> Space:
        return self.B.space @ self.A.space

    @cached_property
    def coalgebra_AB(self):
        return tensor_coalgebra(self.A, self.B)

    @cached_property
    def coalgebra_BA(self):
        return tensor_coalgebra(self.B, self.A)

    @cached_property
    def e(self) -> DenseMap:
        """The idempotent ψφ on B⊗A."""
        if self.phi is None:
            raise ValueError("law has no weak inverse")
        return compose(self.psi, self.phi).dense()

    @cached_property
    def f(self) -> DenseMap:
        """The idempotent φψ on A⊗B."""
        return compose(self.phi, self.psi).dense()

    def with_phi(self, phi: LinMap) -> "WeakDistLaw":
        return replace(self, phi=phi)

    def basis_label(self, idx: tuple, order: str = "BA") -> str:
        X, Y = (self.B, self.A) if order == "BA" else (self.A, self.B)
        return f"{X.labels[idx[0]]}⊗{Y.labels[idx[1]]}"


# ---------------------------------------------------------------------------
# Checkers


def check_wdl(psi: LinMap, A: WeakBialgebra, B: WeakBialgebra, target: str = "weak distributive law") -> AxiomReport:
    """The four conditions of a weak distributive law ψ: A⊗B -> B⊗A, plus the
    combined unit condition."""
    rep = AxiomReport(target, field=A.field)
    psi = _on(psi, A.space @ B.space, B.space @ A.space)
    IA, IB = A.id, B.id
    m1 = rep.add(
        "multiplicative-A",
        equal_maps(compose(psi, tensor(A.mu, IB)), compose(tensor(IB, A.mu), tensor(psi, IA), tensor(IA, psi))),
    )
    m2 = rep.add(
        "multiplicative-B",
        equal_maps(compose(psi, tensor(IA, B.mu)), compose(tensor(B.mu, IA), tensor(IB, psi), tensor(psi, IB))),
    )
    u1 = rep.add(
        "unit-A",
        equal_maps(compose(psi, tensor(A.eta, IB)), compose(tensor(B.mu, IA), tensor(IB, psi), tensor(IB, A.eta, B.eta))),
    )
    u2 = rep.add(
        "unit-B",
        equal_maps(compose(psi, tensor(IA, B.eta)), compose(tensor(IB, A.mu), tensor(psi, IA), tensor(A.eta, B.eta, IA))),
    )
    comb = rep.add("unit-combined", equal_maps(*_combined_unit_sides(psi, A, B)))
    rep.add(
        "unit-agreement",
        not (m1 and m2) or (u1 and u2) == comb,
        note="combined unit condition agrees with the two unit conditions",
    )
    return rep


def _combined_unit_sides(psi, A, B):
    IA, IB = A.id, B.id
    left = compose(tensor(IB, A.mu), tensor(psi, IA), tensor(A.eta, IB, IA))
    right = compose(tensor(B.mu, IA), tensor(IB, psi), tensor(IB, IA, B.eta))
    return left, right


def inverse_target(psi: LinMap, A: WeakBialgebra, B: WeakBialgebra) -> LinMap:
    """(μ⊗A)(B⊗ψ)(B⊗A⊗η), the value ψφ must take."""
    return _combined_unit_sides(psi, A, B)[1]


def check_weak_inverse(psi: LinMap, phi: LinMap, A: WeakBialgebra, B: WeakBialgebra,
                       target: str = "weak inverse") -> AxiomReport:
    rep = AxiomReport(target, field=A.field)
    AB, BA = A.space @ B.space, B.space @ A.space
    psi, phi = _on(psi, AB, BA), _on(phi, BA, AB)
    e = compose(psi, phi).dense()
    f = compose(phi, psi).dense()
    rep.add("psi-phi", equal_maps(e, inverse_target(psi, A, B)))
    rep.add("phi-psi", equal_maps(f, inverse_target(phi, B, A)))
    rep.add("psi-phi-psi", equal_maps(compose(e, psi), psi))
    rep.add("phi-psi-phi", equal_maps(compose(f, phi), phi))
    rep.add("idempotent-psi-phi", equal_maps(compose(e, e), e))
    rep.add("idempotent-phi-psi", equal_maps(compose(f, f), f))
    rep.extend(check_wdl(phi, B, A), prefix="phi-")
    return rep


def check_weak_comonoidal(psi: LinMap, phi: LinMap, A: WeakBialgebra, B: WeakBialgebra,
                          target: str = "weak comonoidality") -> AxiomReport:
    rep = AxiomReport(target, field=A.field)
    AB, BA = A.space @ B.space, B.space @ A.space
    psi, phi = _on(psi, AB, BA), _on(phi, BA, AB)
    dAB, eAB = tensor_coalgebra(A, B)
    dBA, eBA = tensor_coalgebra(B, A)
    e = compose(psi, phi).dense()
    f = compose(phi, psi).dense()
    IBA, IAB = ident(BA, A.field), ident(AB, A.field)
    mid_psi = compose(tensor(psi, psi), dAB)
    rep.add("psibar-left", equal_maps(compose(tensor(e, IBA), dBA, psi), mid_psi))
    rep.add("psibar-right", equal_maps(compose(tensor(IBA, e), dBA, psi), mid_psi))
    mid_phi = compose(tensor(phi, phi), dBA)
    rep.add("phibar-left", equal_maps(compose(tensor(f, IAB), dAB, phi), mid_phi))
    rep.add("phibar-right", equal_maps(compose(tensor(IAB, f), dAB, phi), mid_phi))
    c1 = rep.add("counit", equal_maps(compose(eBA, psi), compose(eAB, f)))
    c2 = rep.add("counit-dual-form", equal_maps(compose(eAB, phi), compose(eBA, e)))
    rep.add("counit-agreement", c1 == c2, note="the two counit forms agree")
    return rep


def verify_law(law: WeakDistLaw) -> AxiomReport:
    """All three checkers; the law must carry a weak inverse."""
    rep = AxiomReport(law.name or "law", field=law.field)
    rep.extend(check_wdl(law.psi, law.A, law.B), prefix="wdl:")
    if law.phi is None:
        rep.add("has-weak-inverse", False)
        return rep
    rep.extend(check_weak_inverse(law.psi, law.phi, law.A, law.B), prefix="inverse:")
    rep.extend(check_weak_comonoidal(law.psi, law.phi, law.A, law.B), prefix="comonoidal:")
    rep.derived["dims"] = {"A": law.A.dim, "B": law.B.dim}
    rep.derived["ranks"] = {"psi_phi": rank(law.e)}
    if law.field.characteristic == 0:
        rep.derived["ranks"]["trace_psi_phi"] = law.field.format(trace(law.e))
    return rep


# ---------------------------------------------------------------------------
# Weak inverse solver


def solve_weak_inverse(psi: LinMap, A: WeakBialgebra, B: WeakBialgebra):
    """Best-effort φ from the linear conditions

        ψφ = (μ⊗A)(B⊗ψ)(B⊗A⊗η),
        φψ = (μ⊗B)(A⊗φ)(A⊗B⊗η).

    The free variables of the solution are set to zero.  Returns φ or ``None``
    if the system is inconsistent; callers must re-verify.
    """
    F = A.field
    a, b = A.dim, B.dim
    AB, BA = A.space @ B.space, B.space @ A.space
    psi = _on(psi, AB, BA).dense()
    n = a * b  # phi is n x n; unknown (r, c) -> r*n + c, r indexes A⊗B, c indexes B⊗A
    rows, rhs = [], []
    P = psi.matrix
    T = inverse_target(psi, A, B).dense().matrix
    # ψφ = T: sum_r P[s, r] x[r, c] = T[s, c]
    for c in range(n):
        for s in range(n):
            row = {r * n + c: P[s, r] for r in range(n) if P[s, r] != 0}
            rows.append(row)
            rhs.append(T[s, c])
    # φψ - (μ_B⊗A... ) with φ unknown: both sides linear in x.
    # LHS: (φψ)[t, j] = sum_c x[t, c] P[c, j]      (j indexes A⊗B)
    # RHS: (μ⊗B)(A⊗φ)(A⊗B⊗η): a_i⊗b_j ↦ a_i ⊗ φ(b_j ⊗ 1_A) then multiply in A.
    one_A = A.one
    for j in range(n):
        ai, bj = AB.multi(j)
        acc: dict = {}
        for c in range(n):
            if P[c, j] != 0:
                for t in range(n):
                    acc[(t, t * n + c)] = acc.get((t, t * n + c), F.zero) + P[c, j]
        for (u,), cu in one_A.items():
            col = BA.flat((bj, u))
            for r in range(n):
                ar, br = AB.multi(r)
                for (k,), m in A.mu.image((ai, ar)).items():
                    t = AB.flat((k, br))
                    key = (t, r * n + col)
                    acc[key] = acc.get(key, F.zero) - cu * m
        per_t: dict = {}
        for (t, var), v in acc.items():
            if v != 0:
                per_t.setdefault(t, {})[var] = v
        for t in range(n):
            rows.append(per_t.get(t, {}))
            rhs.append(F.zero)
    sol = solve_linear(rows, rhs, n * n, F)
    if not sol.consistent:
        return None
    X = np.array(sol.solution, dtype=object).reshape(n, n)
    return DenseMap(BA, AB, X, F)


def with_solved_inverse(law: WeakDistLaw) -> WeakDistLaw | None:
    phi = solve_weak_inverse(law.psi, law.A, law.B)
    return None if phi is None else law.with_phi(phi)


# ---------------------------------------------------------------------------
# Derived identities


def derived_identity_suite(psi: LinMap, phi: LinMap, A: WeakBialgebra, B: WeakBialgebra,
                           target: str = "derived identities") -> AxiomReport:
    """Consequences of the three checkers used in the product and antipode
    constructions, each as an exact map identity."""
    F = A.field
    rep = AxiomReport(target, field=F)
    SA, SB = A.space, B.space
    AB, BA = SA @ SB, SB @ SA
    psi, phi = _on(psi, AB, BA), _on(phi, BA, AB)
    IA, IB = A.id, B.id
    IAB, IBA = ident(AB, F), ident(BA, F)
    dAB, _ = tensor_coalgebra(A, B)
    dBA, _ = tensor_coalgebra(B, A)
    e = compose(psi, phi).dense()
    f = compose(phi, psi).dense()
    ee = tensor(e, e)

    # comultiplicativity of the quotient
    q1 = compose(ee, dBA, e)
    q2 = compose(tensor(psi, psi), tensor(f, IAB), dAB, phi)
    q3 = compose(ee, dBA)
    rep.add("quotient-left", equal_maps(q1, q2))
    rep.add("quotient-right", equal_maps(q2, q3))

    # two forms of ψφ
    left, right = _combined_unit_sides(psi, A, B)
    rep.add("psi-phi-two-forms", equal_maps(e, left))

    # bimodule property and its consequences
    mumu = tensor(B.mu, A.mu)
    rep.add("bimodule", equal_maps(compose(mumu, tensor(IB, e, IA)), compose(e, mumu)))
    lhs = compose(mumu, tensor(IB, psi, IA))
    rep.add("on-left", equal_maps(lhs, compose(e, lhs)))
    r1 = compose(tensor(B.mu, IA), tensor(IB, psi))
    rep.add("on-right-B", equal_maps(compose(r1, tensor(e, IB)), r1))
    r2 = compose(tensor(IB, A.mu), tensor(psi, IA))
    rep.add("on-right-A", equal_maps(compose(r2, tensor(IA, e)), r2))

    # unit and comultiplication of the unit
    unit_AB = _unit_map(A, B)
    unit_BA = _unit_map(B, A)
    rep.add("unit-psi-phi", equal_maps(compose(e, psi, unit_AB), compose(psi, unit_AB)))
    rep.add("unit-simplified", equal_maps(compose(e, unit_BA), compose(psi, unit_AB)))
    d1 = compose(ee, dBA, psi, unit_AB)
    rep.add("unit-coproduct-BA", equal_maps(d1, compose(ee, dBA, unit_BA)))
    rep.add("unit-coproduct-AB", equal_maps(d1, compose(ee, tensor(psi, psi), dAB, unit_AB)))

    # antipode identities
    if isinstance(B, WeakHopfAlgebra):
        rep.add("antipode-B", equal_maps(*_antipode_identity_B(A, B)))
    else:
        rep.add("antipode-B", True, note="vacuous: B has no antipode")
    rep.add("antipode-A", equal_maps(*_antipode_identity_A(A, B)))
    return rep


def _antipode_identity_B(A: WeakBialgebra, B: WeakBialgebra):
    """Consequence of 1₁b⊗1₂ = b₁⊗⊓ᴸ(b₂) in B and ⊓ᴸ = B∗S.

    Both sides map B⊗A⊗A -> A⊗B⊗A⊗A⊗B.
    """
    F = A.field
    SA, SB = A.space, B.space
    IA, IB = A.id, B.id
    dAB, _ = tensor_coalgebra(A, B)
    lhs = compose(
        tensor(IA, B.mu, IA, IA, IB),
        tensor(permute([SB @ SA, SA @ SB], [1, 0], F), IA, IB),
        tensor(IB, IA, dAB),
        tensor(IB, IA, IA, B.eta),
    )
    rhs = compose(
        tensor(IA, IB, IA, IA, B.mu),
        tensor(IA, IB, permute([SA @ SB @ SB, SA], [1, 0], F)),
        tensor(dAB, IB, IA),
        tensor(IA, IB, B.antipode, IA),
        tensor(IA, B.delta, IA),
        permute([SB @ SA, SA], [1, 0], F),
    )
    return lhs, rhs


def _antipode_identity_A(A: WeakBialgebra, B: WeakBialgebra):
    """Consequence of ε(a₁b)a₂ = a⊓ᴸ(b) in A.  Both sides map B⊗A⊗B⊗A -> B⊗A⊗B."""
    F = A.field
    SA, SB = A.space, B.space
    IA, IB = A.id, B.id
    lhs = compose(
        tensor(IB, A.mu, IB),
        tensor(IB, IA, twist(SB, SA, F)),
        tensor(IB, IA, IB, A.projections.left),
    )
    rhs = compose(
        tensor(A.eps, IB, IA, IB),
        tensor(A.mu, IB, IA, IB),
        tensor(IA, permute([SB @ SA @ SB, SA], [1, 0], F)),
        tensor(twist(SB, SA, F), IA, IB, IA),
        tensor(IB, A.delta, IB, IA),
    )
    return lhs, rhs
