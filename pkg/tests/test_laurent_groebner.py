import pytest

from novhom.fields import QQ, PrimeField
from novhom.groebner import (
    buchberger,
    grevlex_key,
    ideals_equal,
    in_ideal,
    laurent_ideal_groebner,
    laurent_ideals_equal,
    normal_form,
    quotient_dimension,
    standard_monomials,
)
from novhom.laurent import LaurentRing


def test_laurent_arithmetic():
    R = LaurentRing(QQ, ("x", "y"))
    x, y = R.variable(0), R.variable(1)
    xinv = R.monomial((-1, 0))
    assert R.eq(R.mul(x, xinv), R.one)
    f = R.add(x, y)
    g = R.sub(R.mul(f, f), R.add(R.mul(x, x), R.mul(y, y)))
    two_xy = R.monomial((1, 1), QQ.from_int(2))
    assert R.eq(g, two_xy)


def test_partial_derivative():
    R = LaurentRing(QQ, ("x", "y"))
    f = R.monomial((3, -2))
    assert R.eq(R.partial(f, 0), R.monomial((2, -2), QQ.from_int(3)))
    assert R.eq(R.partial(f, 1), R.monomial((3, -3), QQ.from_int(-2)))


def test_buchberger_univariate_gcd():
    # <x^2 - 1, x^3 - 1> = <x - 1>
    R = LaurentRing(QQ, ("x",))
    x = R.variable(0)
    f = R.sub(R.mul(x, x), R.one)
    g = R.sub(R.mul(R.mul(x, x), x), R.one)
    gb = buchberger(R, [f, g])
    target = buchberger(R, [R.sub(x, R.one)])
    assert ideals_equal(R, gb, target)


def test_normal_form_is_reduced():
    R = LaurentRing(QQ, ("x", "y"))
    x, y = R.variable(0), R.variable(1)
    gb = buchberger(R, [R.sub(R.mul(x, x), y)])
    nf = normal_form(R, R.mul(R.mul(x, x), x), gb, grevlex_key)
    assert R.eq(nf, R.mul(x, y))


def test_quotient_dimension_two_points():
    # k[x]/(x^2 - x): dimension 2
    R = LaurentRing(PrimeField(7), ("x",))
    x = R.variable(0)
    gb = buchberger(R, [R.sub(R.mul(x, x), x)])
    assert quotient_dimension(R, gb) == 2


def test_standard_monomials_with_free_variable():
    # k[q, x]/(x^2 - q): free of rank 2 over k[q]
    R = LaurentRing(QQ, ("q", "x"))
    q, x = R.variable(0), R.variable(1)
    gb = buchberger(R, [R.sub(R.mul(x, x), q)])
    smons = standard_monomials(R, gb, free_vars=(0,))
    assert sorted(smons) == [(0, 0), (0, 1)]


def test_laurent_ideal_inverts_variables():
    # with y invertible, <x y - 1, x^2 - x> forces x = 1, y = 1
    R = LaurentRing(QQ, ("x", "y"))
    x, y = R.variable(0), R.variable(1)
    gens = [R.sub(R.mul(x, y), R.one), R.sub(R.mul(x, x), x)]
    gb = laurent_ideal_groebner(R, gens, invertible=(1,))
    assert in_ideal(R, R.sub(x, R.one), gb)
    assert in_ideal(R, R.sub(y, R.one), gb)


def test_laurent_ideals_equal_detects_difference():
    R = LaurentRing(QQ, ("x", "y"))
    x, y = R.variable(0), R.variable(1)
    a = [R.sub(x, R.one)]
    b = [R.sub(x, R.one), R.sub(y, R.one)]
    assert laurent_ideals_equal(R, a, a, invertible=())
    assert not laurent_ideals_equal(R, a, b, invertible=())
