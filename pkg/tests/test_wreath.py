import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakhopf.errors import PreconditionFailed
from weakhopf.gallery import (
    StrictificationSpec,
    blown_up_nothing_law,
    cyclic_group,
    cyclic_group_algebra,
    drinfeld_double_law,
    intro_idempotent_law,
    kS_algebra,
    matrix_wha,
    quantum_torus,
    strictification_law,
    twist_law,
)
from weakhopf.linalg import DenseMap, equal_maps, rank, trace
from weakhopf.wdl import solve_weak_inverse
from weakhopf.wha import solve_antipode, verify_antipode
from weakhopf.wreath import (
    build_wreath,
    build_wreath_antipode,
    phi_independence,
    same_structure,
    wreath_consistency_suite,
)


def cyclic_twist(n):
    return twist_law(cyclic_group_algebra(n, symbol="a"), cyclic_group_algebra(n, symbol="b").renamed(f"kZ{n}'"))


def test_twist_product_is_tensor_product():
    w = build_wreath(cyclic_twist(2))
    W = w.product
    assert W.dim == 4
    for x in W.labels:
        i = W.index(x)
        assert W.delta.image((i,)) == {(i, i): 1}
    b1a1 = W.basis_vector("b1⊗a1")
    assert W.multiply(W.basis_vector("b1⊗a0"), W.basis_vector("b0⊗a1")) == b1a1


def test_twist_antipode_inverts_both_factors():
    w = build_wreath(cyclic_twist(3))
    H = build_wreath_antipode(w)
    for i in range(3):
        for j in range(3):
            x = H.index(f"b{i}⊗a{j}")
            assert H.antipode.image((x,)) == H.basis_vector(f"b{-i % 3}⊗a{-j % 3}")


def test_triangular_product_is_matrix_algebra():
    w = build_wreath(blown_up_nothing_law(2))
    W = w.product
    assert W.dim == 4
    # the factors carry no antipode, but the product does
    S = solve_antipode(W)
    assert S and verify_antipode(S, S.antipode).passed
    with pytest.raises(PreconditionFailed):
        build_wreath_antipode(w)


def test_intro_product_has_unit_e():
    law = intro_idempotent_law(kS_algebra(), "e")
    w = build_wreath(law)
    assert w.dim == 1
    assert w.product.one == w.element("1", "e")


def test_double_of_cyclic_group_antipode():
    w = build_wreath(drinfeld_double_law(cyclic_group_algebra(2)))
    H = build_wreath_antipode(w)
    assert verify_antipode(H, H.antipode).passed


@pytest.mark.parametrize(
    "make",
    [lambda: cyclic_twist(2), lambda: blown_up_nothing_law(2), lambda: drinfeld_double_law(matrix_wha(2))],
    ids=["twist", "triangular", "double-M2"],
)
def test_consistency_suite(make):
    rep = wreath_consistency_suite(build_wreath(make()))
    assert rep.passed, rep.render_text()
    assert "diagram-counit-lhs" in rep and "diagram-antipode-left" in rep


def test_unverified_law_is_refused():
    law = blown_up_nothing_law(2)
    fake = DenseMap(law.AB, law.BA, law.psi.dense().matrix * 2)
    with pytest.raises(PreconditionFailed) as info:
        build_wreath(law.__class__(law.A, law.B, fake, law.phi, "fake"))
    assert info.value.report.failures


def test_basis_is_deterministic():
    a = build_wreath(blown_up_nothing_law(3)).product
    b = build_wreath(blown_up_nothing_law(3)).product
    assert a.labels == b.labels and same_structure(a, b)


def test_phi_independence_is_vacuous_on_triangular_law():
    law = blown_up_nothing_law(2)
    out = phi_independence(law, solve_weak_inverse(law.psi, law.A, law.B))
    assert out.identical and out.vacuous


LAWS = {
    "twist": lambda: cyclic_twist(2),
    "triangular-1": lambda: blown_up_nothing_law(1),
    "triangular-2": lambda: blown_up_nothing_law(2),
    "intro": lambda: intro_idempotent_law(kS_algebra(), "e"),
    "torus-2": lambda: quantum_torus(2, 2),
    "torus-2-4": lambda: quantum_torus(2, 4),
    "double-kZ2": lambda: drinfeld_double_law(cyclic_group_algebra(2)),
    "double-kZ3": lambda: drinfeld_double_law(cyclic_group_algebra(3)),
    "double-M2": lambda: drinfeld_double_law(matrix_wha(2)),
}
BUILT = {}


def law_named(name):
    if name not in BUILT:
        BUILT[name] = LAWS[name]()
    return BUILT[name]


@settings(max_examples=len(LAWS))
@given(st.sampled_from(sorted(LAWS)))
def test_dimension_equals_rank_and_trace(name):
    law = law_named(name)
    w = build_wreath(law)
    assert w.dim == rank(law.e) == trace(law.e)
    assert w.report.passed


@pytest.mark.parametrize("make", [
    lambda: drinfeld_double_law(matrix_wha(2)),
    lambda: quantum_torus(2, 2),
    lambda: strictification_law(StrictificationSpec(cyclic_group(2), cyclic_group_algebra(2))),
], ids=["double-M2", "torus-2-2", "strict-Z2"])
def test_wreath_antipode_matches_solver(make):
    w = build_wreath(make())
    solved = solve_antipode(w.product)
    assert solved and equal_maps(solved.antipode, w.antipode.antipode)
