import pytest

from weakhopf.errors import (
    BadTruncation,
    CocycleViolation,
    InvalidCategory,
    InvalidGroupTable,
    NoSuchRoot,
    NotAMatchedPair,
    NotCentralizingIdempotent,
    NotCoalgebraCompatible,
    NotGrouplike,
)
from weakhopf.gallery import (
    FiniteCategorySpec,
    FiniteMonoid,
    StrictificationSpec,
    automorphism_measuring,
    averaged_cyclic_algebra,
    blown_up_nothing_law,
    category_algebra,
    cyclic_group,
    cyclic_group_algebra,
    direct_product,
    drinfeld_double_law,
    group_algebra,
    idempotent_monoid,
    indiscrete_pair_spec,
    intro_idempotent_law,
    kS_algebra,
    klein_factorization,
    matched_pair_law,
    matrix_wha,
    monoid_algebra,
    quantum_torus,
    s3_factorization,
    strictification_isomorphism,
    strictification_law,
    symmetric_group,
    trivial_algebra,
    upper_triangular,
)
from weakhopf.linalg import equal_maps, ident, rank, twist
from weakhopf.scalars import QQ, cyclotomic_field
from weakhopf.wdl import verify_law
from weakhopf.wha import eta_eps, projections, verify_antipode, verify_weak_bialgebra


def test_invalid_tables():
    with pytest.raises(InvalidGroupTable):
        FiniteMonoid(("a", "b"), [[0, 0], [1, 0]])
    with pytest.raises(InvalidGroupTable):
        FiniteMonoid(("a", "b"), [[1, 0], [0, 0]])
    with pytest.raises(InvalidGroupTable):
        cyclic_group(0)
    assert not idempotent_monoid().is_group and symmetric_group(3).is_group


def test_group_algebras():
    k1 = group_algebra(cyclic_group(1))
    assert k1.dim == 1 and verify_weak_bialgebra(k1).passed
    kZ2 = cyclic_group_algebra(2)
    assert all(equal_maps(p, eta_eps(kZ2)) for p in projections(kZ2))
    kS3 = group_algebra(symmetric_group(3))
    assert kS3.dim == 6 and kS3.report.passed and verify_antipode(kS3, kS3.antipode).passed


def test_invalid_category():
    with pytest.raises(InvalidCategory):
        FiniteCategorySpec(
            objects=(1,), morphisms=("f",), source={"f": 1}, target={"f": 1}, composition={}, identity={1: "f"}
        )


def test_discrete_category_is_genuinely_weak():
    H = category_algebra(FiniteCategorySpec.discrete(2))
    assert H.report.passed
    assert H.unit_coproduct.image(()) == {(0, 0): 1, (1, 1): 1}


def test_indiscrete_groupoid_is_matrix_algebra():
    C = category_algebra(FiniteCategorySpec.indiscrete(2), QQ)
    M = matrix_wha(2)
    assert C.labels == M.labels
    for f, g in ((C.mu, M.mu), (C.eta, M.eta), (C.delta, M.delta), (C.eps, M.eps), (C.antipode, M.antipode)):
        assert equal_maps(f, g)


def test_poset_category_is_upper_triangular():
    P = category_algebra(FiniteCategorySpec.poset(2))
    U = upper_triangular(2)
    assert P.dim == 3 and P.labels == U.labels
    assert equal_maps(P.mu, U.mu) and equal_maps(P.delta, U.delta)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_algebras(n):
    M = matrix_wha(n)
    assert M.dim == n * n and M.report.passed and verify_antipode(M, M.antipode).passed


def test_matrix_right_projection():
    M = matrix_wha(2)
    assert projections(M).right.image((M.index("e12"),)) == {(M.index("e22"),): 1}


def test_blown_up_nothing():
    law = blown_up_nothing_law(1)
    assert law.A.dim == law.B.dim == 1 and verify_law(law).passed
    law = blown_up_nothing_law(2)
    assert verify_law(law).passed and rank(law.e) == 4


def test_double_of_trivial_and_group():
    law = drinfeld_double_law(trivial_algebra())
    assert law.psi.dense().matrix.tolist() == [[1]]
    law = drinfeld_double_law(cyclic_group_algebra(2))
    assert verify_law(law).passed and equal_maps(law.e, ident(law.BA))


def test_double_of_matrix_algebra_golden_rank():
    law = drinfeld_double_law(matrix_wha(2))
    rep = verify_law(law)
    assert rep.passed
    assert rep.derived["ranks"] == {"psi_phi": 4, "trace_psi_phi": "4"}


def test_matched_pairs():
    law = matched_pair_law(klein_factorization())
    assert verify_law(law).passed
    assert equal_maps(law.psi, twist(law.A.space, law.B.space))
    assert rank(law.e) == 4
    law = matched_pair_law(s3_factorization())
    assert verify_law(law).passed and rank(law.e) == 6


def test_indiscrete_matched_pair_is_rejected_with_report():
    with pytest.raises(NotAMatchedPair) as info:
        matched_pair_law(indiscrete_pair_spec(2))
    assert info.value.report is not None and info.value.report.failures


def test_quantum_torus_cases():
    assert verify_law(quantum_torus(1, 1)).passed
    law = quantum_torus(2, 2)
    assert law.field == QQ and verify_law(law).passed
    assert law.psi.image((law.A.index("V^1"), law.B.index("U^1"))) == {(law.B.index("U^1"), law.A.index("V^1")): -1}
    law = quantum_torus(3, 3)
    assert law.field == cyclotomic_field(3) and verify_law(law).passed
    assert verify_law(quantum_torus(2, 4)).passed


def test_quantum_torus_errors():
    with pytest.raises(BadTruncation):
        quantum_torus(2, 3)
    with pytest.raises(NoSuchRoot):
        quantum_torus(3, 3, QQ)


def test_averaged_algebra_is_weak_hopf():
    H = averaged_cyclic_algebra(3, cyclotomic_field(3))
    assert H.report.passed and verify_antipode(H, H.antipode).passed


def test_strictification_trivial_is_permuted_twist():
    A = cyclic_group_algebra(2)
    law = strictification_law(StrictificationSpec(cyclic_group(2), A))
    assert verify_law(law).passed
    for m in range(law.A.dim):
        for a in range(A.dim):
            assert law.psi.image((m, a)) == {(a, m): 1}


def test_strictification_by_automorphism():
    spec = automorphism_measuring(cyclic_group(2), cyclic_group(2), lambda g, a: a)
    law = strictification_law(spec)
    assert verify_law(law).passed and rank(law.e) == 8
    spec = automorphism_measuring(cyclic_group(2), cyclic_group(3), lambda g, a: a if g == 0 else (-a) % 3)
    law = strictification_law(spec)
    assert verify_law(law).passed and rank(law.e) == 12


def test_strictification_isomorphism_is_bijective():
    spec = automorphism_measuring(cyclic_group(2), cyclic_group(3), lambda g, a: a if g == 0 else (-a) % 3)
    iso = strictification_isomorphism(spec)
    assert iso.domain.dim == iso.codomain.dim == 12 and rank(iso) == 12


def test_strictification_errors():
    A = cyclic_group_algebra(2)
    with pytest.raises(NotCoalgebraCompatible):
        strictification_law(StrictificationSpec(cyclic_group(2), A, cocycle={(1, 1): {0: 2}}))
    with pytest.raises(CocycleViolation) as info:
        strictification_law(StrictificationSpec(cyclic_group(3), A, cocycle={(1, 1): {1: 1}}))
    assert info.value.triple == (1, 1, 2)


def test_intro_examples():
    A = kS_algebra()
    law = intro_idempotent_law(A, "1")
    assert equal_maps(law.e, ident(law.BA))
    law = intro_idempotent_law(A, "e")
    assert verify_law(law).passed and rank(law.e) == 1
    M = monoid_algebra(direct_product(idempotent_monoid(), cyclic_group(2)))
    law = intro_idempotent_law(M, "(e,g0)")
    assert verify_law(law).passed and rank(law.e) == 2


def test_intro_errors():
    with pytest.raises(NotGrouplike):
        intro_idempotent_law(averaged_cyclic_algebra(2), "U^0")
    with pytest.raises(NotCentralizingIdempotent):
        intro_idempotent_law(matrix_wha(2), "e11")
