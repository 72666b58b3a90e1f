import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakhopf.errors import NotWeakBialgebra, ShapeMismatch
from weakhopf.gallery import (
    FiniteCategorySpec,
    category_algebra,
    cyclic_group_algebra,
    group_algebra,
    kS_algebra,
    matrix_wha,
    symmetric_group,
    trivial_algebra,
    upper_triangular,
)
from weakhopf.linalg import DenseMap, equal_maps
from weakhopf.wha import (
    NoAntipode,
    WeakBialgebra,
    convolve,
    dual,
    eta_eps,
    projections,
    solve_antipode,
    verify_antipode,
    verify_projections,
    verify_weak_bialgebra,
)

M2 = matrix_wha(2)
KZ2 = cyclic_group_algebra(2)
KZ3 = cyclic_group_algebra(3)


def endo(H, table):
    """Endomorphism from {label: {label: coeff}}."""
    return DenseMap.from_images(
        H.space, H.space, lambda i: {(H.index(k),): c for k, c in table.get(H.labels[i[0]], {}).items()}, H.field
    )


def e(H, label):
    return {(H.index(label),): 1}


def test_matrix_algebra_passes():
    rep = verify_weak_bialgebra(M2)
    assert rep.passed, rep.render_text()
    assert {"associativity", "delta-multiplicative", "alt-right", "alt-left", "eps-alt-agreement"} <= set(rep.ids)


def test_group_algebra_is_a_bialgebra():
    assert verify_weak_bialgebra(KZ2).passed
    assert KZ2.unit_coproduct.image(()) == {(0, 0): 1}


def test_trace_counit_breaks_counitality():
    n = 2
    lab = [f"e{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    mu = {(a, b): {a // n * n + b % n: 1} for a in range(4) for b in range(4) if a % n == b // n}
    bad = WeakBialgebra.from_tables(lab, mu, {0: 1, 3: 1}, {i: {(i, i): 1} for i in range(4)}, {0: 1, 3: 1})
    rep = verify_weak_bialgebra(bad)
    check = rep["counit-left"]
    assert not check.passed
    assert check.witness["labels"] == ["e12"]


def test_bialgebra_projections_collapse():
    P = projections(KZ2)
    for p in P:
        assert equal_maps(p, eta_eps(KZ2))


def test_matrix_projections():
    P = projections(M2)
    for i in (1, 2):
        for j in (1, 2):
            x = (M2.index(f"e{i}{j}"),)
            assert P.right.image(x) == e(M2, f"e{j}{j}")
            assert P.left.image(x) == e(M2, f"e{i}{i}")


GALLERY_ALGEBRAS = [
    KZ2, KZ3, M2, matrix_wha(3), group_algebra(symmetric_group(3)), upper_triangular(3), kS_algebra(),
    category_algebra(FiniteCategorySpec.discrete(2)), trivial_algebra(),
]


@pytest.mark.parametrize("H", GALLERY_ALGEBRAS, ids=lambda H: H.name)
def test_projection_identities_on_gallery(H):
    rep = verify_weak_bialgebra(H)
    assert rep.passed and rep["eps-alt-agreement"].passed
    assert verify_projections(H).passed


def test_projections_refuse_broken_input():
    trace = DenseMap(M2.space, M2.eps.codomain, np.array([[1, 0, 0, 1]], dtype=object))
    broken = WeakBialgebra(M2.field, M2.mu, M2.eta, M2.delta, trace)
    with pytest.raises(NotWeakBialgebra):
        projections(broken)


def test_convolution_examples():
    P = projections(M2)
    assert equal_maps(convolve(P.right, P.right, M2), P.right)
    assert equal_maps(convolve(M2.id, P.right, M2), M2.id)
    assert equal_maps(convolve(P.left, M2.id, M2), M2.id)
    inv = endo(KZ2, {"g0": {"g0": 1}, "g1": {"g1": 1}})
    assert equal_maps(convolve(KZ2.id, inv, KZ2), eta_eps(KZ2))
    with pytest.raises(ShapeMismatch):
        convolve(KZ2.id, M2.id, KZ2)


def test_antipode_examples():
    T = endo(M2, {f"e{i}{j}": {f"e{j}{i}": 1} for i in (1, 2) for j in (1, 2)})
    assert verify_antipode(M2, T).passed
    assert verify_antipode(KZ2, KZ2.antipode).passed
    assert verify_antipode(KZ2, KZ2.id).passed
    rep = verify_antipode(KZ3, KZ3.id)
    assert not rep["S*id=PiR"].passed


def test_solve_antipode_group_algebra():
    H = solve_antipode(KZ2.without_antipode())
    assert H and equal_maps(H.antipode, KZ2.antipode)


@pytest.mark.parametrize("n", range(1, 7))
def test_solve_antipode_cyclic(n):
    G = cyclic_group_algebra(n)
    H = solve_antipode(G.without_antipode())
    assert H and verify_antipode(H, H.antipode).passed
    assert equal_maps(H.antipode, G.antipode)


def test_solve_antipode_matrix_gives_transpose():
    H = solve_antipode(M2.without_antipode())
    assert H and verify_antipode(H, H.antipode).passed
    for i in (1, 2):
        for j in (1, 2):
            assert H.antipode.image((H.index(f"e{i}{j}"),)) == e(H, f"e{j}{i}")


def test_solve_antipode_trivial():
    H = solve_antipode(trivial_algebra().without_antipode())
    assert H and H.antipode.image((0,)) == {(0,): 1}


def test_triangular_algebra_has_no_antipode():
    out = solve_antipode(upper_triangular(2))
    assert isinstance(out, NoAntipode) and not out and out.rank_deficit > 0


def test_double_dual_is_identity():
    for H in (KZ3, M2, upper_triangular(2)):
        DD = dual(dual(H))
        assert DD.labels == H.labels
        for f, g in ((DD.mu, H.mu), (DD.eta, H.eta), (DD.delta, H.delta), (DD.eps, H.eps)):
            assert equal_maps(f, g)


def test_dual_of_matrix_algebra():
    D = dual(M2)
    assert D.report.passed
    x = (D.index("e12*"),)
    expect = {(D.index(f"e1{k}*"), D.index(f"e{k}2*")): 1 for k in (1, 2)}
    assert D.delta.image(x) == expect
    assert dual(KZ2).report.passed


@st.composite
def endomorphisms(draw, H):
    vals = draw(st.lists(st.integers(-2, 2), min_size=H.dim ** 2, max_size=H.dim ** 2))
    return DenseMap(H.space, H.space, np.array(vals, dtype=object).reshape(H.dim, H.dim), H.field)


@pytest.mark.parametrize("H", [KZ3, M2], ids=["kZ3", "M2"])
@given(data=st.data())
def test_convolution_associative_with_unit(H, data):
    f, g, h = (data.draw(endomorphisms(H)) for _ in range(3))
    assert equal_maps(convolve(convolve(f, g, H), h, H), convolve(f, convolve(g, h, H), H))
    u = eta_eps(H)
    assert equal_maps(convolve(u, f, H), f) and equal_maps(convolve(f, u, H), f)
