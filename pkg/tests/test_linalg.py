import random

from hypothesis import given, strategies as st

from novhom import linalg
from novhom.fields import QQ, PrimeField

F = PrimeField(5)

mats = st.lists(
    st.lists(st.integers(0, 4), min_size=3, max_size=3),
    min_size=2, max_size=4,
)


@given(m=mats)
def test_rank_nullity(m):
    M = [[F.coerce(x) for x in row] for row in m]
    ns = linalg.nullspace(F, M)
    assert linalg.rank(F, M) + len(ns) == 3
    for v in ns:
        assert all(F.is_zero(x) for x in linalg.mat_vec(F, M, v))


@given(m=mats)
def test_solve_consistency(m):
    M = [[F.coerce(x) for x in row] for row in m]
    rng = random.Random(0)
    x = [F.from_int(rng.randint(0, 4)) for _ in range(3)]
    b = linalg.mat_vec(F, M, x)
    sol = linalg.solve(F, M, b)
    assert sol is not None
    assert all(
        F.eq(u, v) for u, v in zip(linalg.mat_vec(F, M, sol), b)
    )


def test_solve_inconsistent_returns_none():
    M = [[QQ.one, QQ.one], [QQ.one, QQ.one]]
    assert linalg.solve(QQ, M, [QQ.zero, QQ.one]) is None


def test_span_and_coords():
    basis = [[QQ.one, QQ.zero], [QQ.one, QQ.one]]
    v = [QQ.from_int(3), QQ.from_int(2)]
    assert linalg.in_span(QQ, basis, v)
    coords = linalg.coords_in_basis(QQ, basis, v)
    out = [QQ.zero, QQ.zero]
    for c, b in zip(coords, basis):
        out = [QQ.add(o, QQ.mul(c, x)) for o, x in zip(out, b)]
    assert out == v


def test_intersect_spans():
    A = [[QQ.one, QQ.zero, QQ.zero], [QQ.zero, QQ.one, QQ.zero]]
    B = [[QQ.zero, QQ.one, QQ.zero], [QQ.zero, QQ.zero, QQ.one]]
    inter = linalg.intersect_spans(QQ, A, B, 3)
    assert linalg.span_dim(QQ, inter) == 1
    assert linalg.in_span(QQ, [[QQ.zero, QQ.one, QQ.zero]], inter[0])


def test_complement_in():
    sub = [[QQ.one, QQ.zero]]
    whole = [[QQ.one, QQ.zero], [QQ.zero, QQ.one]]
    idx, comp = linalg.complement_in(QQ, sub, whole)
    assert idx == [1]
    assert linalg.span_dim(QQ, sub + comp) == 2
