import random

import pytest

from novhom.complexes import FilteredComplex
from novhom.fields import QQ, PrimeField
from novhom.novikov import NovikovRing
from novhom.randomized import random_laurent_matrix
from novhom.smith import (
    class_coordinates_module,
    cokernel_invariants,
    kernel_basis,
    module_cohomology,
    smith_normal_form,
    solve_linear,
    verify_smith,
)


@pytest.fixture
def L():
    return NovikovRing((2,), QQ)


def test_smith_diagonal_divisibility(L):
    rng = random.Random(11)
    for _ in range(30):
        M = random_laurent_matrix(rng, L, rng.randint(1, 4),
                                  rng.randint(1, 4))
        sf = smith_normal_form(L, M)
        assert verify_smith(L, M, sf)
        diag = [
            sf.D[i][i] for i in range(min(len(sf.D), len(sf.D[0])))
            if not L.is_zero(sf.D[i][i])
        ]
        for a, b in zip(diag, diag[1:]):
            q, r = L.divmod(b, a)
            assert L.is_zero(r)


def test_kernel_basis(L):
    # q * x1 - x2 = 0 has kernel spanned by (1, q)
    M = [[L.q, L.neg(L.one)]]
    ker = kernel_basis(L, M)
    assert len(ker) == 1
    v = ker[0]
    lhs = L.sub(L.mul(L.q, v[0]), v[1])
    assert L.is_zero(lhs)


def test_solve_linear(L):
    M = [[L.q, L.zero], [L.zero, L.add(L.one, L.q)]]
    b = [L.monomial(3), L.add(L.one, L.q)]
    x = solve_linear(L, M, b)
    assert x is not None
    assert L.eq(L.mul(L.q, x[0]), b[0])
    assert L.eq(L.mul(L.add(L.one, L.q), x[1]), b[1])
    # q x = 1 + q has no solution over k[q, q^{-1}]? it does: x = q^{-1} + 1
    assert solve_linear(L, [[L.q]], [L.add(L.one, L.q)]) is not None
    # (1 + q) x = 1 has none
    assert solve_linear(L, [[L.add(L.one, L.q)]], [L.one]) is None


def test_cokernel_invariants_torsion(L):
    # coker of multiplication by (1 + q) on Lambda: torsion of order 1 + q
    inv = cokernel_invariants(L, [[L.add(L.one, L.q)]], 1)
    assert inv.free_rank == 0
    assert len(inv.torsion) == 1
    t = inv.torsion[0]
    q, r = L.divmod(t, L.add(L.one, L.q))
    assert L.is_zero(r) and L.is_unit(q)


def test_cokernel_invariants_free(L):
    inv = cokernel_invariants(L, [[L.q], [L.zero]], 2)
    assert inv.free_rank == 1 and not inv.torsion


def test_module_cohomology_oracle(L):
    # d(t) = q x kills the class of x (q is a unit); y survives
    cx = FilteredComplex(
        L,
        [("x", 0, 0), ("y", 2, 0), ("t", -1, 0)],
        {("t", "x"): L.q},
    )
    inv, reps = module_cohomology(cx)
    assert inv.free_rank == 1 and not inv.torsion
    assert list(reps[0]) == ["y"]

    cx2 = FilteredComplex(L, [("x", 0, 0)], {})
    inv2, reps2 = module_cohomology(cx2)
    assert inv2.free_rank == 1 and not inv2.torsion
    assert reps2 == [{"x": L.one}]


def test_class_coordinates_module(L):
    cx = FilteredComplex(L, [("x", 0, 0), ("y", 0, 0)], {})
    inv, reps = module_cohomology(cx)
    C = class_coordinates_module(
        cx, [{"x": L.one}, {"y": L.q}], reps
    )
    assert C is not None and len(C) == 2
    det = L.sub(L.mul(C[0][0], C[1][1]), L.mul(C[0][1], C[1][0]))
    assert L.is_unit(det)


def test_smith_over_prime_field_coefficient_ring():
    Lp = NovikovRing((2,), PrimeField(3))
    rng = random.Random(5)
    for _ in range(10):
        M = random_laurent_matrix(rng, Lp, 3, 3)
        assert verify_smith(Lp, M, smith_normal_form(Lp, M))
