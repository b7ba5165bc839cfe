import random

import pytest
from hypothesis import given, strategies as st

from novhom.fields import QQ, PrimeField
from novhom.novikov import NovikovRing


def elem(L, pairs):
    return L.from_terms([(n, L.base.from_int(c)) for n, c in pairs])


random_elems = st.lists(
    st.tuples(st.integers(-6, 6), st.integers(-5, 5)),
    max_size=4,
).map(lambda ps: tuple(ps))


@given(a=random_elems, b=random_elems, c=random_elems)
def test_ring_axioms(a, b, c):
    L = NovikovRing((2,), QQ)
    x, y, z = elem(L, a), elem(L, b), elem(L, c)
    assert L.eq(L.mul(x, y), L.mul(y, x))
    assert L.eq(L.mul(x, L.add(y, z)), L.add(L.mul(x, y), L.mul(x, z)))
    assert L.eq(L.mul(L.mul(x, y), z), L.mul(x, L.mul(y, z)))
    assert L.eq(L.sub(x, x), L.zero)


def test_gcd_of_weights_sets_generator_grade():
    assert NovikovRing((4,), QQ).a0 == 4
    assert NovikovRing((4, 6), QQ).a0 == 2
    assert NovikovRing((2, 2), QQ).a0 == 2


def test_units_are_single_terms():
    L = NovikovRing((2,), QQ)
    assert L.is_unit(L.monomial(-3, QQ.from_int(5)))
    assert not L.is_unit(L.add(L.one, L.q))
    u = L.monomial(2, QQ.from_int(-7))
    assert L.eq(L.mul(u, L.inv(u)), L.one)


def test_filtration_is_min_exponent():
    L = NovikovRing((2,), QQ)
    x = L.add(L.monomial(-1), L.monomial(4))
    assert L.filtration(x) == -1
    assert L.filtration(L.zero) > 10**6


@given(a=random_elems, b=random_elems)
def test_filtration_ultrametric(a, b):
    L = NovikovRing((2,), PrimeField(5))
    x, y = elem(L, a), elem(L, b)
    s = L.add(x, y)
    if not L.is_zero(s):
        assert L.filtration(s) >= min(L.filtration(x), L.filtration(y))


@given(a=random_elems, b=random_elems)
def test_euclidean_division(a, b):
    L = NovikovRing((2,), QQ)
    x, y = elem(L, a), elem(L, b)
    if L.is_zero(y):
        return
    q, r = L.divmod(x, y)
    assert L.eq(x, L.add(L.mul(q, y), r))
    if not L.is_zero(r):
        assert L.euclidean_norm(r) < L.euclidean_norm(y)


def test_truncate_drops_high_filtration():
    L = NovikovRing((2,), QQ)
    x = L.add(L.monomial(1), L.monomial(5))
    t = L.truncate(x, 3)
    assert L.eq(t, L.monomial(1))


def test_element_json_round_trip():
    L = NovikovRing((2,), QQ)
    rng = random.Random(0)
    for _ in range(20):
        x = L.from_terms(
            [(rng.randint(-4, 4), QQ.random(rng)) for _ in range(3)]
        )
        assert L.eq(L.element_from_json(L.element_to_json(x)), x)
