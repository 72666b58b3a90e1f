from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakhopf.errors import DescriptorMismatch, DivisionByZero, NoSuchRoot
from weakhopf.scalars import (
    QQ,
    CYCLOTOMIC_PRESETS,
    cyclotomic_field,
    cyclotomic_modulus,
    make_field,
    root_of_unity,
)

F5 = make_field({"field": "Fp", "p": 5})
F7 = make_field({"field": "Fp", "p": 7})
Q3 = make_field({"field": "QExt", "modulus": [1, 1, 1]})

rationals = st.fractions(max_denominator=50).map(QQ.coerce)
residues = st.integers(-100, 100).map(F7.coerce)
ext_elems = st.lists(st.fractions(max_denominator=9), min_size=0, max_size=4).map(Q3.coerce)


@pytest.mark.parametrize("elems", [rationals, residues, ext_elems], ids=["Q", "F7", "Q(zeta3)"])
@given(data=st.data())
def test_field_axioms(elems, data):
    a, b, c = (data.draw(elems) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0 * a


@pytest.mark.parametrize("F,elems", [(QQ, rationals), (F7, residues), (Q3, ext_elems)], ids=["Q", "F7", "Q(zeta3)"])
@given(data=st.data())
def test_inverse_and_format_roundtrip(F, elems, data):
    a = data.draw(elems)
    assert F.parse(F.format(a)) == a
    if not F.is_zero(a) and a != F.zero:
        assert F.coerce(a) * F.inv(a) == F.one


def test_rational_examples():
    assert QQ.coerce(Fraction(1, 2)) + QQ.coerce(Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.format(Fraction(-6, 14)) == "-3/7"
    assert QQ.parse("−3/7") == Fraction(-3, 7)
    assert QQ.coerce(Fraction(4, 2)) == 2 and isinstance(QQ.coerce(Fraction(4, 2)), int)


def test_prime_field_examples():
    assert F5.inv(2) == F5.coerce(3)
    assert F5.coerce(7) == F5.coerce(2)
    assert F5.parse("1/2") == F5.coerce(3)


def test_cube_root_of_unity_in_extension():
    q = Q3.gen
    assert q * q * q == Q3.one
    assert q != Q3.one and q * q != Q3.one
    assert Q3.format(q * q) == "-1+-1x"


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QQ.inv(0)
    with pytest.raises(DivisionByZero):
        F5.inv(10)
    with pytest.raises(DivisionByZero):
        Q3.inv(Q3.zero)


def test_descriptor_mismatch():
    with pytest.raises(DescriptorMismatch):
        F5.coerce(F7.one)
    with pytest.raises(DescriptorMismatch):
        QQ.coerce(F5.one)
    with pytest.raises(DescriptorMismatch):
        F5.one + F7.one


def test_bad_fields_rejected():
    with pytest.raises(ValueError):
        make_field({"field": "Fp", "p": 6})
    with pytest.raises(ValueError, match="reducible"):
        make_field({"field": "QExt", "modulus": [-1, 0, 1]})
    with pytest.raises(ValueError, match="monic"):
        make_field({"field": "QExt", "modulus": [1, 2]})


def test_descriptor_roundtrip():
    for F in (QQ, F5, Q3, cyclotomic_field(5)):
        assert make_field(F.descriptor) == F


def test_roots_of_unity_examples():
    assert root_of_unity(QQ, 1) == 1
    assert root_of_unity(QQ, 2) == -1
    assert root_of_unity(F5, 4) == F5.coerce(2)
    with pytest.raises(NoSuchRoot):
        root_of_unity(QQ, 3)
    with pytest.raises(NoSuchRoot):
        root_of_unity(F5, 3)
    with pytest.raises(NoSuchRoot):
        root_of_unity(F5, 5)


@pytest.mark.parametrize("n", list(CYCLOTOMIC_PRESETS))
def test_cyclotomic_presets_have_primitive_roots(n):
    F = cyclotomic_field(n)
    q = root_of_unity(F, n)
    assert q ** n == F.one
    assert all(q ** m != F.one for m in range(1, n))


def test_cyclotomic_modulus_matches_known_polynomials():
    assert cyclotomic_modulus(3) == [1, 1, 1]
    assert cyclotomic_modulus(4) == [1, 0, 1]
    assert cyclotomic_modulus(6) == [1, -1, 1]
    assert cyclotomic_modulus(12) == [1, 0, -1, 0, 1]
