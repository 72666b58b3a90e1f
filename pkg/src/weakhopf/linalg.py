"""Exact linear maps between tensor-power spaces.

Basis convention: the tensor basis of ``X1 ⊗ ... ⊗ Xn`` is ordered
lexicographically with the LEFT factor most significant.  A basis vector is
addressed by its multi-index tuple ``(i1, ..., in)``; the ground field ``k`` has
the single basis vector ``()``.

Maps are evaluated lazily on sparse vectors (``dict`` from multi-index to
nonzero scalar).  Only ``DenseMap`` stores a matrix; compositions, tensor
products, identities and factor permutations are expression nodes that can be
materialised with ``.dense()``.  This keeps composites through spaces such as
``(B⊗A)^{⊗4}`` cheap, since the vectors that flow through them stay sparse.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DescriptorMismatch, NotIdempotent, ShapeMismatch
from .scalars import QQ, Field, Rationals


@dataclass(frozen=True)
class Space:
    factor_dims: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))
        if any(d < 0 for d in self.factor_dims):
            raise ValueError("factor dimensions must be nonnegative")

    @property
    def dim(self) -> int:
        return math.prod(self.factor_dims)

    @property
    def nfactors(self) -> int:
        return len(self.factor_dims)

    def __matmul__(self, other: "Space") -> "Space":
        return Space(self.factor_dims + other.factor_dims)

    def __pow__(self, n: int) -> "Space":
        return Space(self.factor_dims * n)

    def basis(self) -> Iterable[tuple]:
        return itertools.product(*(range(d) for d in self.factor_dims))

    def flat(self, idx: tuple) -> int:
        j = 0
        for i, d in zip(idx, self.factor_dims):
            j = j * d + i
        return j

    def multi(self, j: int) -> tuple:
        out = []
        for d in reversed(self.factor_dims):
            j, r = divmod(j, d)
            out.append(r)
        return tuple(reversed(out))

    def __repr__(self):
        return "Space(" + "⊗".join(map(str, self.factor_dims)) + ")" if self.factor_dims else "Space(k)"


K = Space(())


def tensor_spaces(*spaces: Space) -> Space:
    return Space(tuple(d for s in spaces for d in s.factor_dims))


def _add_into(out: dict, key, c):
    v = out.get(key)
    if v is None:
        out[key] = c
    else:
        out[key] = v + c


def _prune(vec: dict) -> dict:
    return {k: v for k, v in vec.items() if v != 0}


class LinMap:
    """A linear map ``domain -> codomain`` over ``field``."""

    domain: Space
    codomain: Space
    field: Field

    def __init__(self, domain: Space, codomain: Space, field: Field):
        self.domain = domain
        self.codomain = codomain
        self.field = field
        self._cache: dict = {}

    # -- evaluation -------------------------------------------------------
    def image(self, idx: tuple) -> dict:
        """Image of the basis vector ``idx`` as a sparse vector (cached)."""
        v = self._cache.get(idx)
        if v is None:
            v = self._image(idx)
            self._cache[idx] = v
        return v

    def _image(self, idx: tuple) -> dict:
        raise NotImplementedError

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for idx, c in vec.items():
            for o, d in self.image(idx).items():
                _add_into(out, o, c * d)
        return _prune(out)

    def dense(self) -> "DenseMap":
        m = np.full((self.codomain.dim, self.domain.dim), self.field.zero, dtype=object)
        for j, idx in enumerate(self.domain.basis()):
            for o, c in self.image(idx).items():
                m[self.codomain.flat(o), j] = c
        return DenseMap(self.domain, self.codomain, m, self.field)

    @property
    def matrix(self) -> np.ndarray:
        return self.dense().matrix

    # -- algebra of maps --------------------------------------------------
    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def __repr__(self):
        return f"{type(self).__name__}({self.domain} -> {self.codomain})"


class DenseMap(LinMap):
    """A map stored as a ``codomain.dim x domain.dim`` object matrix."""

    def __init__(self, domain: Space, codomain: Space, matrix, field: Field = QQ):
        super().__init__(domain, codomain, field)
        m = np.array(matrix, dtype=object)
        if m.shape != (codomain.dim, domain.dim):
            if m.size == 0 and codomain.dim * domain.dim == 0:
                m = m.reshape(codomain.dim, domain.dim)
            else:
                raise ShapeMismatch(f"matrix shape {m.shape} != {(codomain.dim, domain.dim)}")
        self._matrix = m
        self._cols = None

    @property
    def matrix(self):
        return self._matrix

    def dense(self):
        return self

    def _columns(self):
        if self._cols is None:
            cols = []
            m = self._matrix
            for j in range(self.domain.dim):
                col = m[:, j]
                cols.append({self.codomain.multi(int(i)): col[i] for i in np.flatnonzero(col != 0)})
            self._cols = cols
        return self._cols

    def _image(self, idx):
        return self._columns()[self.domain.flat(idx)]

    def image(self, idx):
        return self._columns()[self.domain.flat(idx)]

    @classmethod
    def from_images(cls, domain: Space, codomain: Space, images, field: Field = QQ):
        """Build from a callable or sequence giving, per domain basis index, a dict
        ``{codomain multi-index: coeff}``."""
        m = np.full((codomain.dim, domain.dim), field.zero, dtype=object)
        for j, idx in enumerate(domain.basis()):
            img = images(idx) if callable(images) else images[j]
            for o, c in img.items():
                o = o if isinstance(o, tuple) else codomain.multi(o)
                m[codomain.flat(o), j] = m[codomain.flat(o), j] + field.coerce(c)
        return cls(domain, codomain, m, field)

    def transpose(self, domain: Space | None = None, codomain: Space | None = None) -> "DenseMap":
        return DenseMap(
            domain or self.codomain, codomain or self.domain, self._matrix.T.copy(), self.field
        )

    def with_spaces(self, domain: Space, codomain: Space) -> "DenseMap":
        """Same matrix, refactored spaces (dims must agree)."""
        return DenseMap(domain, codomain, self._matrix, self.field)


class Identity(LinMap):
    def __init__(self, space: Space, field: Field = QQ):
        super().__init__(space, space, field)

    def _image(self, idx):
        return {idx: self.field.one}

    def apply(self, vec):
        return dict(vec)


class Permutation(LinMap):
    """Reorders tensor blocks: ``X_0 ⊗ ... ⊗ X_{n-1} -> X_{order[0]} ⊗ ...``."""

    def __init__(self, blocks: Sequence[Space], order: Sequence[int], field: Field = QQ):
        blocks = list(blocks)
        order = list(order)
        if sorted(order) != list(range(len(blocks))):
            raise ValueError("order must be a permutation of the blocks")
        super().__init__(tensor_spaces(*blocks), tensor_spaces(*(blocks[i] for i in order)), field)
        self.blocks = blocks
        self.order = order
        offs = [0]
        for b in blocks:
            offs.append(offs[-1] + b.nfactors)
        self._slices = [(offs[i], offs[i + 1]) for i in range(len(blocks))]

    def _image(self, idx):
        out = []
        for i in self.order:
            a, b = self._slices[i]
            out.extend(idx[a:b])
        return {tuple(out): self.field.one}


class Tensor(LinMap):
    def __init__(self, parts: Sequence[LinMap]):
        parts = list(parts)
        field = _common_field(parts)
        super().__init__(
            tensor_spaces(*(p.domain for p in parts)), tensor_spaces(*(p.codomain for p in parts)), field
        )
        self.parts = parts
        offs = [0]
        for p in parts:
            offs.append(offs[-1] + p.domain.nfactors)
        self._slices = [(offs[i], offs[i + 1]) for i in range(len(parts))]

    def _image(self, idx):
        terms = [((), self.field.one)]
        for p, (a, b) in zip(self.parts, self._slices):
            chunk = idx[a:b]
            if isinstance(p, Identity):
                terms = [(t + chunk, c) for t, c in terms]
                continue
            img = p.image(chunk)
            if not img:
                return {}
            if len(img) == 1:
                ((o, d),) = img.items()
                terms = [(t + o, c * d) for t, c in terms]
            else:
                terms = [(t + o, c * d) for t, c in terms for o, d in img.items()]
        out: dict = {}
        for t, c in terms:
            _add_into(out, t, c)
        return _prune(out)


class Composite(LinMap):
    """``parts[0] ∘ parts[1] ∘ ... ∘ parts[-1]`` (the last part is applied first)."""

    def __init__(self, parts: Sequence[LinMap]):
        parts = list(parts)
        for f, g in zip(parts, parts[1:]):
            if f.domain.dim != g.codomain.dim:
                raise ShapeMismatch(f"cannot compose {f} after {g}")
        super().__init__(parts[-1].domain, parts[0].codomain, _common_field(parts))
        self.parts = parts

    def _image(self, idx):
        vec = {idx: self.field.one}
        prev = self.parts[-1].domain
        for p in reversed(self.parts):
            if p.domain.factor_dims != prev.factor_dims:
                vec = {p.domain.multi(prev.flat(t)): c for t, c in vec.items()}
            vec = p.apply(vec)
            prev = p.codomain
            if not vec:
                break
        return vec


def _common_field(parts) -> Field:
    f = parts[0].field
    for p in parts[1:]:
        if p.field is not f and p.field != f:
            raise DescriptorMismatch(f"maps over {f!r} and {p.field!r}")
    return f


# ---------------------------------------------------------------------------
# Public constructors


def compose(*maps: LinMap) -> LinMap:
    """``compose(f, g, h) = f ∘ g ∘ h``."""
    for f, g in zip(maps, maps[1:]):
        if f.domain.dim != g.codomain.dim:
            raise ShapeMismatch(f"cannot compose {f} after {g}")
    maps = [m for m in maps if not isinstance(m, Identity)] or [maps[0]]
    if len(maps) == 1:
        return maps[0]
    flat = []
    for m in maps:
        flat.extend(m.parts if isinstance(m, Composite) else [m])
    return Composite(flat)


def tensor(*maps: LinMap) -> LinMap:
    if len(maps) == 1:
        return maps[0]
    if all(isinstance(m, Identity) for m in maps):
        return Identity(tensor_spaces(*(m.domain for m in maps)), _common_field(maps))
    return Tensor(maps)


def ident(space: Space, field: Field = QQ) -> Identity:
    return Identity(space, field)


def twist(X: Space, Y: Space, field: Field = QQ) -> Permutation:
    """The flip ``X ⊗ Y -> Y ⊗ X``."""
    return Permutation([X, Y], [1, 0], field)


def permute(blocks: Sequence[Space], order: Sequence[int], field: Field = QQ) -> Permutation:
    return Permutation(blocks, order, field)


def zero_map(domain: Space, codomain: Space, field: Field = QQ) -> DenseMap:
    return DenseMap(domain, codomain, np.full((codomain.dim, domain.dim), field.zero, dtype=object), field)


def vector_map(codomain: Space, vec: dict, field: Field = QQ) -> DenseMap:
    """The map ``k -> codomain`` picking out ``vec``."""
    return DenseMap.from_images(K, codomain, [vec], field)


# ---------------------------------------------------------------------------
# Comparison


@dataclass
class Comparison:
    equal: bool
    column: tuple | None = None
    left: dict | None = None
    right: dict | None = None

    def __bool__(self):
        return self.equal


def equal_maps(f: LinMap, g: LinMap) -> Comparison:
    """Exact equality; on failure the first differing domain basis index and both images."""
    if f.domain.dim != g.domain.dim or f.codomain.dim != g.codomain.dim:
        raise ShapeMismatch(f"{f} vs {g}")
    same_in = f.domain.factor_dims == g.domain.factor_dims
    same_out = f.codomain.factor_dims == g.codomain.factor_dims
    for idx in f.domain.basis():
        fi = f.image(idx)
        gi = g.image(idx if same_in else g.domain.multi(f.domain.flat(idx)))
        if not same_out:
            gi = {f.codomain.multi(g.codomain.flat(o)): c for o, c in gi.items()}
        if fi != gi:
            return Comparison(False, idx, fi, gi)
    return Comparison(True)


# ---------------------------------------------------------------------------
# Row reduction


def _row_content_normalise(row: dict) -> dict:
    g = reduce(math.gcd, (abs(v) for v in row.values()), 0)
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _integer_rows(rows: list[dict]) -> list[dict]:
    out = []
    for r in rows:
        den = reduce(math.lcm, (Fraction(v).denominator for v in r.values()), 1)
        out.append({k: int(Fraction(v) * den) for k, v in r.items() if v != 0})
    return out


def rref_sparse(rows: Sequence[dict], ncols: int, field: Field = QQ) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows (``{col: value}``).

    Returns the nonzero rows ordered by pivot column and the pivot columns.
    Over Q the elimination is fraction-free (integer rows with content
    removal); fractions appear only in the final pivot normalisation.
    """
    fraction_free = isinstance(field, Rationals)
    work = _integer_rows(rows) if fraction_free else [
        {k: field.coerce(v) for k, v in r.items() if v != 0} for r in rows
    ]
    work = [r for r in work if r]
    pivot_rows: dict[int, dict] = {}
    free = list(range(len(work)))
    for col in range(ncols):
        cands = [i for i in free if col in work[i]]
        if not cands:
            continue
        pi = min(cands, key=lambda i: (len(work[i]), i))
        free.remove(pi)
        prow = work[pi]
        p = prow[col]
        if not fraction_free:
            inv = field.inv(p)
            prow = {k: v * inv for k, v in prow.items()}
            work[pi] = prow
            p = field.one
        for i in range(len(work)):
            if i == pi or col not in work[i]:
                continue
            r = work[i]
            a = r[col]
            if fraction_free:
                new = {k: p * v for k, v in r.items()}
                for k, v in prow.items():
                    new[k] = new.get(k, 0) - a * v
                new = _row_content_normalise({k: v for k, v in new.items() if v != 0})
            else:
                new = dict(r)
                for k, v in prow.items():
                    new[k] = new.get(k, field.zero) - a * v
                new = {k: v for k, v in new.items() if v != 0}
            work[i] = new
        pivot_rows[col] = pi
    pivots = sorted(pivot_rows)
    out = []
    for col in pivots:
        r = work[pivot_rows[col]]
        if fraction_free:
            p = r[col]
            r = {k: QQ.coerce(Fraction(v, p)) for k, v in r.items()}
        out.append(r)
    return out, pivots


def dense_rows(m: np.ndarray) -> list[dict]:
    return [{j: m[i, j] for j in np.flatnonzero(m[i] != 0)} for i in range(m.shape[0])]


def rank(f: LinMap) -> int:
    d = f.dense()
    return len(rref_sparse(dense_rows(d.matrix), d.domain.dim, d.field)[1])


def trace(f: LinMap):
    if f.domain.dim != f.codomain.dim:
        raise ShapeMismatch("trace of a non-endomorphism")
    m = f.dense().matrix
    return sum((m[i, i] for i in range(m.shape[0])), f.field.zero)


@dataclass
class LinearSolution:
    solution: list | None
    rank: int
    augmented_rank: int

    @property
    def consistent(self) -> bool:
        return self.solution is not None

    @property
    def rank_deficit(self) -> int:
        return self.augmented_rank - self.rank


def solve_linear(rows: Sequence[dict], rhs: Sequence, ncols: int, field: Field = QQ) -> LinearSolution:
    """Solve ``A x = b`` for sparse rows of A.  The particular solution has every
    free variable set to zero (so it is determined by the RREF)."""
    aug = []
    for r, b in zip(rows, rhs):
        r = dict(r)
        if b != 0:
            r[ncols] = b
        aug.append(r)
    red, pivots = rref_sparse(aug, ncols + 1, field)
    rank_a = sum(1 for p in pivots if p < ncols)
    if pivots and pivots[-1] == ncols:
        return LinearSolution(None, rank_a, len(pivots))
    x = [field.zero] * ncols
    for r, p in zip(red, pivots):
        x[p] = r.get(ncols, field.zero)
    return LinearSolution(x, rank_a, len(pivots))


def inverse(f: LinMap) -> DenseMap:
    """Inverse of a bijective map (raises ValueError otherwise)."""
    d = f.dense()
    n = d.domain.dim
    if d.codomain.dim != n:
        raise ShapeMismatch("inverse of a non-square map")
    m = d.matrix
    rows = []
    for i in range(n):
        r = {j: m[i, j] for j in np.flatnonzero(m[i] != 0)}
        r[n + i] = d.field.one
        rows.append(r)
    red, pivots = rref_sparse(rows, 2 * n, d.field)
    if pivots[:n] != list(range(n)) or (len(pivots) > n and pivots[n - 1] != n - 1):
        raise ValueError("map is not invertible")
    inv = np.full((n, n), d.field.zero, dtype=object)
    for i, r in enumerate(red[:n]):
        for k, v in r.items():
            if k >= n:
                inv[i, k - n] = v
    return DenseMap(d.codomain, d.domain, inv, d.field)


# ---------------------------------------------------------------------------
# Idempotent splitting


@dataclass
class SplitIdempotent:
    e: DenseMap
    image: Space
    section: DenseMap  # ι : image -> ambient
    retraction: DenseMap  # π : ambient -> image
    pivots: list

    @property
    def iota(self):
        return self.section

    @property
    def pi(self):
        return self.retraction


def split_idempotent(e: LinMap) -> SplitIdempotent:
    """Split an idempotent through its image using the RREF column-space basis.

    ι has the pivot columns of ``e`` as its columns and π is the nonzero part of
    RREF(e); then π∘ι = id and ι∘π = e.
    """
    if e.domain.dim != e.codomain.dim:
        raise ShapeMismatch("idempotent must be an endomorphism")
    d = e.dense()
    cmp = equal_maps(compose(d, d), d)
    if not cmp:
        raise NotIdempotent(f"e∘e != e at basis vector {cmp.column}", witness=cmp)
    n = d.domain.dim
    red, pivots = rref_sparse(dense_rows(d.matrix), n, d.field)
    r = len(pivots)
    img = Space((r,))
    sec = DenseMap(img, d.codomain, d.matrix[:, pivots] if r else np.zeros((n, 0), dtype=object), d.field)
    ret = np.full((r, n), d.field.zero, dtype=object)
    for i, row in enumerate(red):
        for k, v in row.items():
            ret[i, k] = v
    retr = DenseMap(d.domain, img, ret, d.field)
    split = SplitIdempotent(d, img, sec, retr, pivots)
    assert equal_maps(compose(retr, sec), ident(img, d.field)), "π∘ι != id"
    assert equal_maps(compose(sec, retr), d), "ι∘π != e"
    return split
