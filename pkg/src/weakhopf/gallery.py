"""Constructors for the worked examples: group, category and matrix algebras,
and the weak distributive laws built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    BadTruncation,
    CocycleViolation,
    InvalidCategory,
    InvalidGroupTable,
    NotAMatchedPair,
    NotCentralizingIdempotent,
    NotCoalgebraCompatible,
    NotGrouplike,
    PreconditionFailed,
    UnknownGallery,
)
from .linalg import DenseMap, Space, compose, equal_maps, inverse, rank, tensor, twist
from .scalars import QQ, Field, cyclotomic_field, root_of_unity
from .wdl import WeakDistLaw, check_wdl, solve_weak_inverse, verify_law
from .wha import WeakBialgebra, WeakHopfAlgebra, dual

# ---------------------------------------------------------------------------
# Monoids and groups


@dataclass(frozen=True)
class FiniteMonoid:
    """A multiplication table on labelled elements; ``table[i][j]`` is the index of the product."""

    labels: tuple
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        n = len(self.labels)
        if n == 0:
            raise InvalidGroupTable("empty table")
        if len(set(self.labels)) != n:
            raise InvalidGroupTable("duplicate labels")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise InvalidGroupTable(f"table must be {n}x{n}")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise InvalidGroupTable("table entry out of range")
        t = self.table
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroupTable(f"not associative at {self.labels[a]}, {self.labels[b]}, {self.labels[c]}")
        if self._find_unit() is None:
            raise InvalidGroupTable("no two-sided unit")

    def _find_unit(self):
        n = len(self.labels)
        for u in range(n):
            if all(self.table[u][x] == x == self.table[x][u] for x in range(n)):
                return u
        return None

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def unit(self) -> int:
        return self._find_unit()

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int | None:
        for b in range(self.order):
            if self.table[a][b] == self.unit == self.table[b][a]:
                return b
        return None

    @property
    def is_group(self) -> bool:
        return all(self.inverse(a) is not None for a in range(self.order))

    def index(self, label) -> int:
        return self.labels.index(label)

    @classmethod
    def from_operation(cls, elements: Sequence, op: Callable, labels: Sequence[str] | None = None):
        elements = list(elements)
        pos = {x: i for i, x in enumerate(elements)}
        try:
            table = [[pos[op(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise InvalidGroupTable(f"operation not closed: {exc}") from None
        return cls(tuple(labels or map(str, elements)), table)


def cyclic_group(n: int, symbol: str = "g") -> FiniteMonoid:
    if n < 1:
        raise InvalidGroupTable("order must be positive")
    return FiniteMonoid(tuple(f"{symbol}{k}" for k in range(n)), [[(a + b) % n for b in range(n)] for a in range(n)])


def symmetric_group(n: int) -> FiniteMonoid:
    """Permutations in one-line notation; (p·q)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(n)))
    return FiniteMonoid.from_operation(
        perms,
        lambda p, q: tuple(p[i] for i in q),
        ["".join(str(i + 1) for i in p) for p in perms],
    )


def direct_product(G: FiniteMonoid, H: FiniteMonoid) -> FiniteMonoid:
    pairs = list(itertools.product(range(G.order), range(H.order)))
    return FiniteMonoid.from_operation(
        pairs,
        lambda x, y: (G.mul(x[0], y[0]), H.mul(x[1], y[1])),
        [f"({G.labels[a]},{H.labels[b]})" for a, b in pairs],
    )


def klein_group() -> FiniteMonoid:
    return direct_product(cyclic_group(2, "a"), cyclic_group(2, "b"))


def idempotent_monoid() -> FiniteMonoid:
    """S = {1, e} with e² = e."""
    return FiniteMonoid(("1", "e"), [[0, 1], [1, 1]])


def monoid_algebra(M: FiniteMonoid, field: Field = QQ, name: str = "") -> WeakBialgebra:
    """kM with grouplike basis: Δ(s) = s⊗s, ε(s) = 1."""
    n = M.order
    return WeakBialgebra.from_tables(
        M.labels,
        mu={(a, b): {M.mul(a, b): 1} for a in range(n) for b in range(n)},
        eta={M.unit: 1},
        delta={a: {(a, a): 1} for a in range(n)},
        eps={a: 1 for a in range(n)},
        field=field,
        name=name or f"kM{n}",
    )


def group_algebra(G: FiniteMonoid, field: Field = QQ, name: str = "") -> WeakHopfAlgebra:
    """kG with S(g) = g⁻¹."""
    if not G.is_group:
        raise InvalidGroupTable("table is not a group")
    base = monoid_algebra(G, field, name or f"kG{G.order}")
    S = DenseMap.from_images(base.space, base.space, lambda i: {(G.inverse(i[0]),): 1}, field)
    return base.with_antipode(S)


def cyclic_group_algebra(n: int, field: Field = QQ, symbol: str = "g") -> WeakHopfAlgebra:
    return group_algebra(cyclic_group(n, symbol), field, f"kZ{n}")


def trivial_algebra(field: Field = QQ, label: str = "1") -> WeakHopfAlgebra:
    """The ground field as a (Hopf) algebra of dimension one."""
    return group_algebra(FiniteMonoid((label,), [[0]]), field, "k")


# ---------------------------------------------------------------------------
# Finite categories


@dataclass(frozen=True)
class FiniteCategorySpec:
    """Morphisms with ``f∘g`` defined exactly when ``source[f] == target[g]``."""

    objects: tuple
    morphisms: tuple
    source: Mapping
    target: Mapping
    composition: Mapping  # (f, g) -> f∘g
    identity: Mapping  # object -> morphism

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        self.validate()

    def validate(self):
        mors = set(self.morphisms)
        if len(mors) != len(self.morphisms):
            raise InvalidCategory("duplicate morphism labels")
        objs = set(self.objects)
        for f in self.morphisms:
            if self.source.get(f) not in objs or self.target.get(f) not in objs:
                raise InvalidCategory(f"morphism {f} has no valid source/target")
        for x in self.objects:
            i = self.identity.get(x)
            if i not in mors or self.source[i] != x or self.target[i] != x:
                raise InvalidCategory(f"bad identity at object {x}")
        for f, g in itertools.product(self.morphisms, repeat=2):
            composable = self.source[f] == self.target[g]
            if composable != ((f, g) in self.composition):
                raise InvalidCategory(f"composition {f}∘{g} defined inconsistently")
            if composable:
                h = self.composition[(f, g)]
                if h not in mors or self.source[h] != self.source[g] or self.target[h] != self.target[f]:
                    raise InvalidCategory(f"{f}∘{g} has the wrong source or target")
        for f in self.morphisms:
            if self.composition[(f, self.identity[self.source[f]])] != f or \
               self.composition[(self.identity[self.target[f]], f)] != f:
                raise InvalidCategory(f"identity law fails at {f}")
        c = self.composition
        for f, g, h in itertools.product(self.morphisms, repeat=3):
            if (f, g) in c and (g, h) in c and c[(c[(f, g)], h)] != c[(f, c[(g, h)])]:
                raise InvalidCategory(f"associativity fails at {f}, {g}, {h}")

    def inverse(self, f):
        for g in self.morphisms:
            if (f, g) in self.composition and (g, f) in self.composition \
               and self.composition[(f, g)] == self.identity[self.target[f]] \
               and self.composition[(g, f)] == self.identity[self.source[f]]:
                return g
        return None

    @property
    def is_groupoid(self) -> bool:
        return all(self.inverse(f) is not None for f in self.morphisms)

    # constructors -------------------------------------------------------
    @classmethod
    def from_arrows(cls, n: int, keep: Callable[[int, int], bool]):
        """Objects 1..n with one arrow ``e_ij: j -> i`` for each kept pair."""
        sep = "" if n < 10 else ","
        lab = {(i, j): f"e{i}{sep}{j}" for i in range(1, n + 1) for j in range(1, n + 1) if keep(i, j)}
        mors = tuple(lab.values())
        src = {lab[p]: p[1] for p in lab}
        tgt = {lab[p]: p[0] for p in lab}
        comp = {}
        for (i, j), (l, k) in itertools.product(lab, repeat=2):
            if j == l:
                if (i, k) not in lab:
                    raise InvalidCategory("arrow set not closed under composition")
                comp[(lab[(i, j)], lab[(l, k)])] = lab[(i, k)]
        ident = {i: lab[(i, i)] for i in range(1, n + 1)}
        return cls(tuple(range(1, n + 1)), mors, src, tgt, comp, ident)

    @classmethod
    def discrete(cls, n: int):
        return cls.from_arrows(n, lambda i, j: i == j)

    @classmethod
    def indiscrete(cls, n: int):
        return cls.from_arrows(n, lambda i, j: True)

    @classmethod
    def poset(cls, n: int, upper: bool = True):
        """Upper (i ≤ j) or lower (i ≥ j) triangular matrix units."""
        return cls.from_arrows(n, (lambda i, j: i <= j) if upper else (lambda i, j: i >= j))

    @classmethod
    def from_group(cls, G: FiniteMonoid, obj="*"):
        mors = G.labels
        comp = {(G.labels[a], G.labels[b]): G.labels[G.mul(a, b)] for a in range(G.order) for b in range(G.order)}
        return cls((obj,), mors, {m: obj for m in mors}, {m: obj for m in mors}, comp, {obj: G.labels[G.unit]})


def category_algebra(C: FiniteCategorySpec, field: Field = QQ, name: str = "") -> WeakBialgebra:
    """kC with fg = δ_{s(f),t(g)} f∘g, Δ(g) = g⊗g, ε(g) = 1; S(g) = g⁻¹ for groupoids."""
    idx = {m: i for i, m in enumerate(C.morphisms)}
    n = len(C.morphisms)
    mu = {(idx[f], idx[g]): {idx[h]: 1} for (f, g), h in C.composition.items()}
    eta = {idx[C.identity[x]]: 1 for x in C.objects}
    base = WeakBialgebra.from_tables(
        C.morphisms, mu, eta, {i: {(i, i): 1} for i in range(n)}, {i: 1 for i in range(n)}, field,
        name=name,
    )
    if not C.is_groupoid:
        return base
    S = DenseMap.from_images(base.space, base.space, lambda i: {(idx[C.inverse(C.morphisms[i[0]])],): 1}, field)
    return base.with_antipode(S)


def matrix_wha(n: int, field: Field = QQ) -> WeakHopfAlgebra:
    """M_n with Δ(e_ij) = e_ij⊗e_ij, ε ≡ 1 and S the transpose."""
    return category_algebra(FiniteCategorySpec.indiscrete(n), field, f"M{n}")


def upper_triangular(n: int, field: Field = QQ) -> WeakBialgebra:
    return category_algebra(FiniteCategorySpec.poset(n, True), field, f"U{n}")


def lower_triangular(n: int, field: Field = QQ) -> WeakBialgebra:
    return category_algebra(FiniteCategorySpec.poset(n, False), field, f"L{n}")


# ---------------------------------------------------------------------------
# Laws


def _law_map(X: WeakBialgebra, Y: WeakBialgebra, images: Callable, field: Field) -> DenseMap:
    """A map X⊗Y -> Y⊗X from a function on basis index pairs."""
    return DenseMap.from_images(X.space @ Y.space, Y.space @ X.space, images, field)


def twist_law(A: WeakBialgebra, B: WeakBialgebra) -> WeakDistLaw:
    """The flip a⊗b ↦ b⊗a with the reverse flip as inverse."""
    return WeakDistLaw(
        A, B, twist(A.space, B.space, A.field).dense(), twist(B.space, A.space, A.field).dense(),
        name=f"twist({A.name},{B.name})",
    )


def blown_up_nothing_law(n: int, field: Field = QQ) -> WeakDistLaw:
    """ψ: L⊗U -> U⊗L, e_ij⊗e_lk ↦ δ_{jl} e_in⊗e_nk, with φ(e_lk⊗e_ij) = δ_{ki} e_l1⊗e_1j."""
    if n < 1:
        raise ValueError("n must be positive")
    Lc, Uc = FiniteCategorySpec.poset(n, False), FiniteCategorySpec.poset(n, True)
    L, U = category_algebra(Lc, field, f"L{n}"), category_algebra(Uc, field, f"U{n}")
    sep = "" if n < 10 else ","

    def pair(label):
        i, j = (label[1:].split(",") if sep else (label[1:2], label[2:]))
        return int(i), int(j)

    li = {pair(m): k for k, m in enumerate(Lc.morphisms)}
    ui = {pair(m): k for k, m in enumerate(Uc.morphisms)}

    def psi(idx):
        (i, j), (l, k) = pair(L.labels[idx[0]]), pair(U.labels[idx[1]])
        return {(ui[(i, n)], li[(n, k)]): 1} if j == l else {}

    def phi(idx):
        (l, k), (i, j) = pair(U.labels[idx[0]]), pair(L.labels[idx[1]])
        return {(li[(l, 1)], ui[(1, j)]): 1} if k == i else {}

    return WeakDistLaw(L, U, _law_map(L, U, psi, field), _law_map(U, L, phi, field), name=f"blown-up-nothing-{n}")


def _triple_coproduct(H: WeakBialgebra) -> list[dict]:
    """Δ²(b_h) = Σ D[x, y, z] b_x⊗b_y⊗b_z via (Δ⊗id)Δ."""
    out = []
    for h in range(H.dim):
        acc: dict = {}
        for (x, w), c in H.delta.image((h,)).items():
            for (y, z), d in H.delta.image((x,)).items():
                acc[(y, z, w)] = acc.get((y, z, w), H.field.zero) + c * d
        out.append({k: v for k, v in acc.items() if v != 0})
    return out


def _triple_product(H: WeakBialgebra) -> dict:
    """(z, a) -> [(p, q, c)] with c the coefficient of b_a in b_p b_q b_z."""
    out: dict = {}
    d = H.dim
    for p, q in itertools.product(range(d), repeat=2):
        for (u,), c in H.mu.image((p, q)).items():
            for z in range(d):
                for (a,), e in H.mu.image((u, z)).items():
                    out.setdefault((z, a), {})
                    out[(z, a)][(p, q)] = out[(z, a)].get((p, q), H.field.zero) + c * e
    return {k: [(p, q, c) for (p, q), c in v.items() if c != 0] for k, v in out.items()}


def drinfeld_double_law(H: WeakHopfAlgebra) -> WeakDistLaw:
    """ψ: H⊗Ĥ -> Ĥ⊗H, h⊗α ↦ α₂⊗h₂⟨S(h₁)|α₁⟩⟨h₃|α₃⟩, and the matching weak inverse."""
    if not isinstance(H, WeakHopfAlgebra):
        raise PreconditionFailed("the double needs a weak Hopf algebra")
    rep = H.report
    if not (rep.passed and H.antipode_report.passed):
        raise PreconditionFailed(f"{H.name} is not a verified weak Hopf algebra", rep)
    F = H.field
    Hd = dual(H)
    D3 = _triple_coproduct(H)
    M3 = _triple_product(H)
    S = H.antipode.dense().matrix

    def psi(idx):
        h, a = idx
        out: dict = {}
        for (x, y, z), c in D3[h].items():
            for p, q, m in M3.get((z, a), ()):
                s = S[p, x]
                if s != 0:
                    out[(q, y)] = out.get((q, y), F.zero) + c * m * s
        return {k: v for k, v in out.items() if v != 0}

    def phi(idx):
        a, h = idx
        out: dict = {}
        for (x, y, z), c in D3[h].items():
            for r in range(H.dim):
                s = S[r, z]
                if s == 0:
                    continue
                for p, q, m in M3.get((r, a), ()):
                    if p == x:
                        out[(y, q)] = out.get((y, q), F.zero) + c * m * s
        return {k: v for k, v in out.items() if v != 0}

    return WeakDistLaw(H, Hd, _law_map(H, Hd, psi, F), _law_map(Hd, H, phi, F), name=f"double({H.name})")


# -- quantum torus -----------------------------------------------------------


def averaged_cyclic_algebra(N: int, field: Field = QQ) -> WeakHopfAlgebra:
    """⟨U | U^N = 1⟩ with Δ(Uⁿ) = 1/N Σ_k U^{k+n}⊗U^{-k}, ε(U^m) = N·[m ≡ 0], S = id."""
    inv_n = field.inv(N)
    labels = tuple(f"U^{n}" for n in range(N))
    return WeakBialgebra.from_tables(
        labels,
        mu={(a, b): {(a + b) % N: 1} for a in range(N) for b in range(N)},
        eta={0: 1},
        delta={n: {((k + n) % N, (-k) % N): inv_n for k in range(1, N + 1)} for n in range(N)},
        eps={0: N},
        field=field,
        antipode={n: {n: 1} for n in range(N)},
        name=f"<U>{N}",
    )


def quantum_torus(N: int, M: int | None = None, field: Field | None = None, q=None) -> WeakDistLaw:
    """ψ: ⟨V⟩⊗⟨U⟩ -> ⟨U⟩⊗⟨V⟩, V^m⊗U^n ↦ q^{nm} U^n⊗V^m, with V^M = 1."""
    M = N if M is None else M
    if N < 1 or M < 1:
        raise BadTruncation("N and M must be positive")
    if M % N:
        raise BadTruncation(f"M={M} is not a multiple of N={N}; ψ is ill-defined on V^M = 1")
    if field is None:
        field = QQ if N <= 2 else cyclotomic_field(N)
    q = root_of_unity(field, N) if q is None else field.coerce(q)
    B = averaged_cyclic_algebra(N, field)
    A = group_algebra(cyclic_group(M, "V^"), field, f"<V>{M}")
    powers = [field.one]
    for _ in range(N * M):
        powers.append(powers[-1] * q)
    qinv = field.inv(q)
    ipow = [field.one]
    for _ in range(N * M):
        ipow.append(ipow[-1] * qinv)
    psi = _law_map(A, B, lambda i: {(i[1], i[0]): powers[(i[0] * i[1]) % N]}, field)
    phi = _law_map(B, A, lambda i: {(i[1], i[0]): ipow[(i[0] * i[1]) % N]}, field)
    return WeakDistLaw(A, B, psi, phi, name=f"quantum-torus-{N}-{M}")


# -- strictification ----------------------------------------------------------


@dataclass
class StrictificationSpec:
    """A measuring φ_g of a Hopf algebra ``A`` by ``G`` with twisted cocycle c_{g,h}.

    ``measuring[g]`` is a ``dim A x dim A`` matrix; ``cocycle[(g, h)]`` a coefficient
    vector in A.  Omitted entries default to the identity and to 1.
    """

    G: FiniteMonoid
    A: WeakHopfAlgebra
    measuring: dict = field(default_factory=dict)
    cocycle: dict = field(default_factory=dict)
    coalgebra_compatible: bool = True

    def phi(self, g: int) -> np.ndarray:
        m = self.measuring.get(g)
        if m is None:
            return np.identity(self.A.dim, dtype=object) * self.A.field.one
        return np.array(m, dtype=object)

    def c(self, g: int, h: int) -> dict:
        v = self.cocycle.get((g, h))
        if v is None:
            return dict(self.A.one)
        if isinstance(v, Mapping):
            return {(k if isinstance(k, tuple) else (k,)): self.A.field.coerce(x) for k, x in v.items() if x != 0}
        return {(i,): self.A.field.coerce(x) for i, x in enumerate(v) if x != 0}


def _apply_matrix(m: np.ndarray, vec: dict, F: Field) -> dict:
    out: dict = {}
    for (j,), c in vec.items():
        for i in np.flatnonzero(m[:, j] != 0):
            out[(int(i),)] = out.get((int(i),), F.zero) + c * m[i, j]
    return {k: v for k, v in out.items() if v != 0}


def _element_inverse(A: WeakBialgebra, x: dict) -> dict:
    """Two-sided inverse of x in A, via left multiplication."""
    Lx = DenseMap.from_images(A.space, A.space, lambda i: A.multiply(x, {i: A.field.one}), A.field)
    try:
        inv = inverse(Lx)
    except ValueError:
        raise CocycleViolation("cocycle value is not invertible") from None
    y = inv.apply(A.one)
    if A.multiply(y, x) != A.one:
        raise CocycleViolation("cocycle value has no two-sided inverse")
    return y


def _validate_strictification(spec: StrictificationSpec):
    G, A, F = spec.G, spec.A, spec.A.field
    if not G.is_group:
        raise InvalidGroupTable("measuring group is not a group")
    n, d = G.order, A.dim
    e = G.unit
    basis = [{(i,): F.one} for i in range(d)]
    if not (spec.phi(e) == np.identity(d, dtype=object)).all():
        raise CocycleViolation("φ_1 must be the identity", (e,))
    for g in range(n):
        if spec.c(e, g) != A.one or spec.c(g, e) != A.one:
            raise CocycleViolation("cocycle must be normalised", (e, g))
    for g in range(n):
        pg = spec.phi(g)
        if _apply_matrix(pg, A.one, F) != A.one:
            raise CocycleViolation(f"φ_{G.labels[g]} is not unital", (g,))
        for a, b in itertools.product(range(d), repeat=2):
            lhs = _apply_matrix(pg, A.multiply(basis[a], basis[b]), F)
            rhs = A.multiply(_apply_matrix(pg, basis[a], F), _apply_matrix(pg, basis[b], F))
            if lhs != rhs:
                raise CocycleViolation(f"φ_{G.labels[g]} is not multiplicative", (g,))
    inv = {(g, h): _element_inverse(A, spec.c(g, h)) for g in range(n) for h in range(n)}
    for g, h in itertools.product(range(n), repeat=2):
        c, ci = spec.c(g, h), inv[(g, h)]
        pgh = spec.phi(G.mul(g, h))
        for a in range(d):
            lhs = _apply_matrix(spec.phi(g), _apply_matrix(spec.phi(h), basis[a], F), F)
            rhs = A.multiply(A.multiply(c, _apply_matrix(pgh, basis[a], F)), ci)
            if lhs != rhs:
                raise CocycleViolation("φ_g φ_h ≠ Ad(c_{g,h}) φ_gh", (g, h))
    for g, h, k in itertools.product(range(n), repeat=3):
        lhs = A.multiply(_apply_matrix(spec.phi(g), spec.c(h, k), F), spec.c(g, G.mul(h, k)))
        rhs = A.multiply(spec.c(g, h), spec.c(G.mul(g, h), k))
        if lhs != rhs:
            raise CocycleViolation("twisted cocycle identity fails", (g, h, k))
    if spec.coalgebra_compatible:
        for (g, h) in itertools.product(range(n), repeat=2):
            c = spec.c(g, h)
            dc = A.delta.apply(c)
            cc = {(i, j): x * y for (i,), x in c.items() for (j,), y in c.items()}
            if dc != {k: v for k, v in cc.items() if v != 0} or A.eps.apply(c).get((), F.zero) != F.one:
                raise NotCoalgebraCompatible(f"c_{{{G.labels[g]},{G.labels[h]}}} is not grouplike",
                                             (G.labels[g], G.labels[h]))
        for g in range(n):
            pg = DenseMap(A.space, A.space, spec.phi(g), F)
            if not equal_maps(compose(A.delta, pg), compose(tensor(pg, pg), A.delta)) or \
               not equal_maps(compose(A.eps, pg), A.eps):
                raise NotCoalgebraCompatible(f"φ_{G.labels[g]} is not a coalgebra map", (G.labels[g],))
    return inv


def _group_matrix_algebra(G: FiniteMonoid, field: Field) -> WeakHopfAlgebra:
    """M_n with matrix units e_{g,h} indexed by G×G (row-major)."""
    n = G.order
    labs = G.labels
    objs = tuple(labs)
    lab = {(g, h): f"e[{labs[g]},{labs[h]}]" for g in range(n) for h in range(n)}
    comp = {(lab[(g, h)], lab[(h, k)]): lab[(g, k)] for g in range(n) for h in range(n) for k in range(n)}
    C = FiniteCategorySpec(
        objs, tuple(lab.values()), {lab[p]: labs[p[1]] for p in lab}, {lab[p]: labs[p[0]] for p in lab},
        comp, {labs[g]: lab[(g, g)] for g in range(n)},
    )
    return category_algebra(C, field, f"M{n}")


def strictification_law(spec: StrictificationSpec) -> WeakDistLaw:
    """ψ: M_n⊗A -> A⊗M_n, e_{g,h}⊗a ↦ c⁻¹ φ_x(a) c ⊗ e_{g,h} with x = g⁻¹h, c = c_{x,h⁻¹}."""
    inv = _validate_strictification(spec)
    G, A, F = spec.G, spec.A, spec.A.field
    n, d = G.order, A.dim
    Mn = _group_matrix_algebra(G, F)
    unit = lambda g, h: g * n + h  # noqa: E731  (row-major index of e_{g,h})

    def twist_data(g, h):
        x = G.mul(G.inverse(g), h)
        y = G.inverse(h)
        return x, spec.c(x, y), inv[(x, y)]

    def psi(idx):
        g, h = divmod(idx[0], n)
        x, c, ci = twist_data(g, h)
        img = A.multiply(A.multiply(ci, _apply_matrix(spec.phi(x), {(idx[1],): F.one}, F)), c)
        return {(k, unit(g, h)): v for (k,), v in img.items()}

    phi_inv = {x: inverse(DenseMap(A.space, A.space, spec.phi(x), F)).matrix for x in range(n)}

    def phi(idx):
        a, gh = idx
        g, h = divmod(gh, n)
        x, c, ci = twist_data(g, h)
        img = _apply_matrix(phi_inv[x], A.multiply(A.multiply(c, {(a,): F.one}), ci), F)
        return {(gh, k): v for (k,), v in img.items()}

    return WeakDistLaw(Mn, A, _law_map(Mn, A, psi, F), _law_map(A, Mn, phi, F), name=f"strictification({A.name})")


def strictification_isomorphism(spec: StrictificationSpec) -> DenseMap:
    """a⊗e_{g,h} ↦ ĝ ⊗ a c⁻¹_{g⁻¹h,h⁻¹} ⊗ g⁻¹h, from A⊗M_n to k̂G⊗A⊗kG."""
    inv = _validate_strictification(spec)
    G, A, F = spec.G, spec.A, spec.A.field
    n, d = G.order, A.dim

    def img(idx):
        a, gh = idx
        g, h = divmod(gh, n)
        x = G.mul(G.inverse(g), h)
        v = A.multiply({(a,): F.one}, inv[(x, G.inverse(h))])
        return {(g, k, x): c for (k,), c in v.items()}

    return DenseMap.from_images(Space((d, n * n)), Space((n, d, n)), img, F)


def trivial_strictification(G: FiniteMonoid, A: WeakHopfAlgebra) -> StrictificationSpec:
    return StrictificationSpec(G, A)


def automorphism_measuring(G: FiniteMonoid, A_group: FiniteMonoid, action: Callable[[int, int], int],
                           field: Field = QQ) -> StrictificationSpec:
    """G acting on kA by group automorphisms ``action(g, a)``, trivial cocycle."""
    A = group_algebra(A_group, field)
    meas = {}
    for g in range(G.order):
        m = np.full((A.dim, A.dim), field.zero, dtype=object)
        for a in range(A.dim):
            m[action(g, a), a] = field.one
        meas[g] = m
    return StrictificationSpec(G, A, meas)


# -- matched pairs -------------------------------------------------------------


@dataclass
class MatchedPairSpec:
    """Groupoids H, V over common objects with actions ▷: (h, v) -> V and ◁: (h, v) -> H,
    defined exactly on pairs with source_H(h) = target_V(v)."""

    H: FiniteCategorySpec
    V: FiniteCategorySpec
    left: dict  # (h, v) -> h▷v
    right: dict  # (h, v) -> h◁v

    def validate(self):
        if set(self.H.objects) != set(self.V.objects):
            raise NotAMatchedPair("groupoids have different object sets")
        for h in self.H.morphisms:
            for v in self.V.morphisms:
                want = self.H.source[h] == self.V.target[v]
                have = (h, v) in self.left and (h, v) in self.right
                if want != have:
                    raise NotAMatchedPair(f"actions must be defined exactly on composable pairs; see ({h}, {v})")
                if have and (self.left[(h, v)] not in self.V.morphisms or self.right[(h, v)] not in self.H.morphisms):
                    raise NotAMatchedPair(f"action value out of range at ({h}, {v})")

    @classmethod
    def from_exact_factorization(cls, G: FiniteMonoid, H_elems: Sequence[int], V_elems: Sequence[int]):
        """h v = (h▷v)(h◁v) with h▷v in V and h◁v in H, for G = V·H uniquely."""
        H_elems, V_elems = list(H_elems), list(V_elems)
        fac = {}
        for v in V_elems:
            for h in H_elems:
                g = G.mul(v, h)
                if g in fac:
                    raise NotAMatchedPair("subgroups do not give an exact factorization")
                fac[g] = (v, h)
        if len(fac) != G.order:
            raise NotAMatchedPair("subgroups do not give an exact factorization")

        def sub(elems):
            return FiniteMonoid.from_operation(elems, G.mul, [G.labels[x] for x in elems])

        Hg, Vg = sub(H_elems), sub(V_elems)
        Hc, Vc = FiniteCategorySpec.from_group(Hg), FiniteCategorySpec.from_group(Vg)
        left, right = {}, {}
        for h in H_elems:
            for v in V_elems:
                v2, h2 = fac[G.mul(h, v)]
                left[(G.labels[h], G.labels[v])] = G.labels[v2]
                right[(G.labels[h], G.labels[v])] = G.labels[h2]
        return cls(Hc, Vc, left, right)


def matched_pair_law(spec: MatchedPairSpec, field: Field = QQ) -> WeakDistLaw:
    """ψ(h⊗v) = δ_{s(h),t(v)} (h▷v ⊗ h◁v) with a solved weak inverse."""
    spec.validate()
    kH = category_algebra(spec.H, field, "kH")
    kV = category_algebra(spec.V, field, "kV")
    hi = {m: i for i, m in enumerate(spec.H.morphisms)}
    vi = {m: i for i, m in enumerate(spec.V.morphisms)}

    def psi(idx):
        h, v = spec.H.morphisms[idx[0]], spec.V.morphisms[idx[1]]
        if (h, v) not in spec.left:
            return {}
        return {(vi[spec.left[(h, v)]], hi[spec.right[(h, v)]]): 1}

    psiM = _law_map(kH, kV, psi, field)
    rep = check_wdl(psiM, kH, kV, "matched pair law")
    if not rep.passed:
        raise NotAMatchedPair("ψ is not a weak distributive law", rep)
    phi = solve_weak_inverse(psiM, kH, kV)
    if phi is None:
        raise NotAMatchedPair("ψ has no weak inverse", rep)
    law = WeakDistLaw(kH, kV, psiM, phi, name="matched-pair")
    full = verify_law(law)
    if not full.passed:
        raise NotAMatchedPair("solved weak inverse fails verification", full)
    return law


def indiscrete_pair_spec(n: int = 2) -> MatchedPairSpec:
    """H = V = the indiscrete groupoid, h▷v = identity at t(h), h◁v = h∘v."""
    C = FiniteCategorySpec.indiscrete(n)
    left, right = {}, {}
    for h in C.morphisms:
        for v in C.morphisms:
            if C.source[h] == C.target[v]:
                left[(h, v)] = C.identity[C.target[h]]
                right[(h, v)] = C.composition[(h, v)]
    return MatchedPairSpec(C, C, left, right)


# -- introductory example -------------------------------------------------------


def intro_idempotent_law(A: WeakBialgebra, e: int | str) -> WeakDistLaw:
    """B = k, ψ(a⊗1) = 1⊗ea and φ(1⊗a) = ea⊗1 for a grouplike idempotent e with ea = eae."""
    F = A.field
    ei = e if isinstance(e, int) else A.index(e)
    ev = {(ei,): F.one}
    if A.delta.image((ei,)) != {(ei, ei): F.one} or A.eps.image((ei,)) != {(): F.one}:
        raise NotGrouplike(f"{A.labels[ei]} is not grouplike", (A.labels[ei],))
    if A.multiply(ev, ev) != ev:
        raise NotCentralizingIdempotent(f"{A.labels[ei]} is not idempotent", (A.labels[ei],))
    for a in range(A.dim):
        ea = A.multiply(ev, {(a,): F.one})
        if A.multiply(ea, ev) != ea:
            raise NotCentralizingIdempotent(f"e·{A.labels[a]} ≠ e·{A.labels[a]}·e", (A.labels[a],))
    k = trivial_algebra(F)
    left = {a: A.multiply(ev, {(a,): F.one}) for a in range(A.dim)}
    psi = _law_map(A, k, lambda i: {(0, o[0]): c for o, c in left[i[0]].items()}, F)
    phi = _law_map(k, A, lambda i: {(o[0], 0): c for o, c in left[i[1]].items()}, F)
    return WeakDistLaw(A, k, psi, phi, name=f"intro({A.labels[ei]})")


def kS_algebra(field: Field = QQ) -> WeakBialgebra:
    """The monoid algebra of S = {1, e}, e² = e."""
    return monoid_algebra(idempotent_monoid(), field, "kS")


# ---------------------------------------------------------------------------
# Registry used by the command line


@dataclass
class GalleryItem:
    algebras: dict
    laws: dict
    field: Field = QQ


def _item(*objs, field: Field = QQ) -> GalleryItem:
    algs, laws = {}, {}
    for o in objs:
        if isinstance(o, WeakDistLaw):
            laws[o.name] = o
            algs.setdefault(o.A.name, o.A)
            algs.setdefault(o.B.name, o.B)
        else:
            algs[o.name] = o
    return GalleryItem(algs, laws, field)


def _int(params, i, default=None):
    if len(params) > i:
        return int(params[i])
    if default is None:
        raise ValueError(f"missing integer parameter #{i + 1}")
    return default


def _kS_product_law(field):
    M = direct_product(idempotent_monoid(), cyclic_group(2))
    return intro_idempotent_law(monoid_algebra(M, field, "kSxZ2"), "(e,g0)")


def _strict_variant(variant: str, field: Field):
    Z2 = cyclic_group(2)
    if variant == "trivial":
        return StrictificationSpec(Z2, cyclic_group_algebra(2, field))
    if variant == "inversion":
        Z3 = cyclic_group(3)
        return automorphism_measuring(Z2, Z3, lambda g, a: a if g == 0 else (-a) % 3, field)
    if variant == "z4-cocycle":
        A = cyclic_group_algebra(4, field)
        return StrictificationSpec(Z2, A, cocycle={(1, 1): {1: 1}})
    if variant == "broken-cocycle":
        # negative control: c_{g,g} = 2·1 satisfies the cocycle identities but is not grouplike
        return StrictificationSpec(Z2, cyclic_group_algebra(2, field), cocycle={(1, 1): {0: 2}})
    raise ValueError(f"unknown strictification variant {variant!r}")


GALLERY: dict = {
    "matrix": lambda p, f: _item(matrix_wha(_int(p, 0), f), field=f),
    "cyclic": lambda p, f: _item(cyclic_group_algebra(_int(p, 0), f), field=f),
    "symmetric": lambda p, f: _item(group_algebra(symmetric_group(_int(p, 0, 3)), f, f"kS{_int(p, 0, 3)}"), field=f),
    "discrete": lambda p, f: _item(category_algebra(FiniteCategorySpec.discrete(_int(p, 0)), f, f"D{_int(p, 0)}"), field=f),
    "upper": lambda p, f: _item(upper_triangular(_int(p, 0), f), field=f),
    "twist-cyclic": lambda p, f: _item(
        twist_law(cyclic_group_algebra(_int(p, 0, 2), f, "a"), cyclic_group_algebra(_int(p, 1, 2), f, "b").renamed(
            f"kZ{_int(p, 1, 2)}'")), field=f),
    "blown-up-nothing": lambda p, f: _item(blown_up_nothing_law(_int(p, 0), f), field=f),
    "double-cyclic": lambda p, f: _item(drinfeld_double_law(cyclic_group_algebra(_int(p, 0), f)), field=f),
    "double-matrix": lambda p, f: _item(drinfeld_double_law(matrix_wha(_int(p, 0), f)), field=f),
    "intro-kS": lambda p, f: _item(intro_idempotent_law(kS_algebra(f), "e"), field=f),
    "intro-kSxZ2": lambda p, f: _item(_kS_product_law(f), field=f),
    "strictification": lambda p, f: _item(strictification_law(_strict_variant(p[0] if p else "trivial", f)), field=f),
    "matched-pair-s3": lambda p, f: _item(matched_pair_law(s3_factorization(), f), field=f),
    "matched-pair-klein": lambda p, f: _item(matched_pair_law(klein_factorization(), f), field=f),
}


def _quantum_torus_item(p, f):
    N = _int(p, 0)
    M = _int(p, 1, N)
    law = quantum_torus(N, M, None if f is QQ and N > 2 else f)
    return _item(law, field=law.field)


GALLERY["quantum-torus"] = _quantum_torus_item


def s3_factorization() -> MatchedPairSpec:
    """S3 = Z3·Z2: H = {e, (12)}, V = the rotations."""
    G = symmetric_group(3)
    H = [G.index("123"), G.index("213")]
    V = [G.index("123"), G.index("231"), G.index("312")]
    return MatchedPairSpec.from_exact_factorization(G, H, V)


def klein_factorization() -> MatchedPairSpec:
    G = klein_group()
    return MatchedPairSpec.from_exact_factorization(
        G, [G.index("(a0,b0)"), G.index("(a1,b0)")], [G.index("(a0,b0)"), G.index("(a0,b1)")]
    )


def build_gallery(name: str, params: Sequence[str] = (), field: Field = QQ) -> GalleryItem:
    try:
        make = GALLERY[name]
    except KeyError:
        raise UnknownGallery(f"unknown gallery item {name!r}; choose from {', '.join(sorted(GALLERY))}") from None
    return make(list(params), field)


def rank_of_idempotent(law: WeakDistLaw) -> int:
    return rank(law.e)
