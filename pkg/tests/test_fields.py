from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from novhom.fields import (
    QQ,
    CyclotomicField,
    FieldError,
    PrimeField,
    field_from_spec,
)

FIELDS = [QQ, PrimeField(2), PrimeField(7), CyclotomicField(3),
          CyclotomicField(6)]


@pytest.mark.parametrize("F", FIELDS)
@given(a=st.integers(-20, 20), b=st.integers(-20, 20), c=st.integers(-20, 20))
def test_field_axioms(F, a, b, c):
    x, y, z = F.from_int(a), F.from_int(b), F.from_int(c)
    assert F.eq(F.add(x, y), F.add(y, x))
    assert F.eq(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)))
    assert F.eq(F.add(x, F.neg(x)), F.zero)
    if not F.is_zero(x):
        assert F.eq(F.mul(x, F.inv(x)), F.one)


@pytest.mark.parametrize("F", FIELDS)
def test_str_round_trip(F):
    for n in range(-5, 6):
        x = F.from_int(n)
        assert F.eq(F.from_str(F.to_str(x)), x)


def test_prime_field_requires_prime():
    with pytest.raises(FieldError):
        PrimeField(6)


def test_cyclotomic_roots_of_unity():
    for m in (3, 4, 5, 6, 8, 12):
        K = CyclotomicField(m)
        z = K.zeta()
        p = K.one
        for _ in range(m):
            p = K.mul(p, z)
        assert K.eq(p, K.one)
        # primitive: no smaller power is 1
        p = K.one
        for _ in range(1, m):
            p = K.mul(p, z)
            assert not K.eq(p, K.one)


def test_cyclotomic_zeta_powers():
    K = CyclotomicField(5)
    assert K.eq(K.zeta(7), K.mul(K.zeta(3), K.zeta(4)))


def test_field_from_spec():
    assert field_from_spec("q") is QQ
    assert field_from_spec("fp:11").characteristic == 11
    assert field_from_spec("cyclotomic:8").m == 8
    with pytest.raises(FieldError):
        field_from_spec("gf:4")


def test_rationals_are_fractions():
    assert QQ.div(QQ.from_int(1), QQ.from_int(3)) == Fraction(1, 3)
    assert QQ.characteristic == 0
