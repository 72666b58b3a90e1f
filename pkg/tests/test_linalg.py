from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from weakhopf.errors import NotIdempotent, ShapeMismatch
from weakhopf.gallery import blown_up_nothing_law
from weakhopf.linalg import (
    K,
    DenseMap,
    Space,
    compose,
    equal_maps,
    ident,
    inverse,
    rank,
    solve_linear,
    split_idempotent,
    tensor,
    trace,
    twist,
)
from weakhopf.scalars import QQ, make_field

small = st.integers(-3, 3)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda m: np.array(m, dtype=object)
    )


def as_map(m, dom=None, cod=None):
    dom = dom or Space((m.shape[1],))
    cod = cod or Space((m.shape[0],))
    return DenseMap(dom, cod, m)


@given(int_matrix(2, 3), int_matrix(3, 2))
def test_compose_matches_matrix_product(a, b):
    f, g = as_map(a), as_map(b)
    assert (compose(f, g).dense().matrix == a.dot(b)).all()


@given(int_matrix(2, 2), int_matrix(3, 2))
def test_tensor_matches_kronecker(a, b):
    out = tensor(as_map(a), as_map(b)).dense().matrix
    oracle = np.kron(a.astype(np.int64), b.astype(np.int64))
    assert (out.astype(np.int64) == oracle).all()


@given(int_matrix(2, 2), int_matrix(2, 2), int_matrix(2, 2), int_matrix(2, 2))
def test_interchange_law(a, b, c, d):
    f, g, f2, g2 = map(as_map, (a, b, c, d))
    lhs = compose(tensor(f, g), tensor(f2, g2))
    rhs = tensor(compose(f, f2), compose(g, g2))
    assert equal_maps(lhs, rhs)


@given(int_matrix(3, 3))
def test_rank_matches_sympy(a):
    assert rank(as_map(a)) == sympy.Matrix(a.tolist()).rank()


@given(int_matrix(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_linear_consistency(a, b):
    rows = [{j: a[i, j] for j in range(4) if a[i, j] != 0} for i in range(4)]
    sol = solve_linear(rows, b, 4)
    M = sympy.Matrix(a.tolist())
    aug = M.row_join(sympy.Matrix(b))
    assert sol.consistent == (M.rank() == aug.rank())
    if sol.consistent:
        assert list(M * sympy.Matrix(sol.solution)) == list(map(sympy.Integer, b))


def test_identity_examples():
    f = as_map(np.array([[1, 2], [3, 4]], dtype=object))
    assert equal_maps(compose(ident(Space((2,))), f), f)
    assert equal_maps(tensor(ident(K), f), f)
    assert equal_maps(tensor(ident(Space((2,))), ident(Space((2,)))), ident(Space((4,))))


def test_twist_examples():
    X, Y = Space((2,)), Space((3,))
    assert twist(X, Y).image((1, 2)) == {(2, 1): 1}
    assert equal_maps(compose(twist(Y, X), twist(X, Y)), ident(X @ Y))
    assert equal_maps(twist(K, K), ident(K))


def test_equal_maps_witness():
    X = Space((2,))
    cmp = equal_maps(ident(X @ X), twist(X, X))
    assert not cmp
    assert cmp.column == (0, 1)
    assert cmp.left == {(0, 1): 1} and cmp.right == {(1, 0): 1}
    with pytest.raises(ShapeMismatch):
        equal_maps(ident(X), ident(X @ X))


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(ident(Space((2,))), ident(Space((3,))))


def test_psi_phi_psi_on_triangular_law():
    law = blown_up_nothing_law(2)
    assert equal_maps(compose(law.psi, law.phi, law.psi), law.psi)


def test_split_identity_and_projection():
    s = split_idempotent(ident(Space((3,))))
    assert s.image.dim == 3
    assert equal_maps(s.iota, ident(Space((3,)))) and equal_maps(s.pi, ident(Space((3,))))
    s = split_idempotent(as_map(np.array([[1, 0], [0, 0]], dtype=object)))
    assert s.image.dim == 1
    assert s.iota.matrix.tolist() == [[1], [0]]
    assert s.pi.matrix.tolist() == [[1, 0]]


def test_split_rejects_non_idempotent():
    with pytest.raises(NotIdempotent) as info:
        split_idempotent(as_map(np.array([[2, 0], [0, 1]], dtype=object)))
    assert info.value.witness.column == (0,)


@st.composite
def idempotents(draw, n=4):
    """P D P⁻¹ with D a 0/1 diagonal and P unimodular upper-triangular."""
    diag = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    upper = draw(st.lists(small, min_size=n * n, max_size=n * n))
    P = sympy.Matrix(n, n, lambda i, j: 1 if i == j else (upper[i * n + j] if j > i else 0))
    M = P * sympy.diag(*diag) * P.inv()
    return np.array([[Fraction(int(x.p), int(x.q)) for x in row] for row in M.tolist()], dtype=object)


@given(idempotents())
def test_split_contracts(e):
    f = as_map(e)
    s = split_idempotent(f)
    assert equal_maps(compose(s.pi, s.iota), ident(s.image))
    assert equal_maps(compose(s.iota, s.pi), f)
    assert s.image.dim == rank(f) == trace(f)


def test_split_over_prime_field():
    F = make_field({"field": "Fp", "p": 3})
    m = np.array([[F.coerce(x) for x in row] for row in [[1, 1], [0, 0]]], dtype=object)
    s = split_idempotent(DenseMap(Space((2,)), Space((2,)), m, F))
    assert s.image.dim == 1


def test_inverse():
    f = as_map(np.array([[2, 1], [1, 1]], dtype=object))
    assert equal_maps(compose(inverse(f), f), ident(Space((2,))))
    with pytest.raises(ValueError):
        inverse(as_map(np.array([[1, 1], [1, 1]], dtype=object)))


def test_triangular_idempotent_has_rank_four():
    law = blown_up_nothing_law(2)
    assert split_idempotent(law.e).image.dim == 4


def test_factorization_mismatch_is_tolerated():
    f = DenseMap(Space((2, 2)), Space((4,)), np.identity(4, dtype=object) * QQ.one)
    g = ident(Space((4,)))
    assert equal_maps(compose(g, f), f)
