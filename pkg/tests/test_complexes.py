import pytest

from novhom.complexes import (
    ChainMap,
    ComplexError,
    FilteredComplex,
    cone,
    direct_sum,
    expand_over_base_field,
    field_cohomology,
    find_primitive,
    truncate_below_filtration,
)
from novhom.fields import QQ, PrimeField
from novhom.novikov import NovikovRing


def two_term(F=None):
    """0 -> F<a> -> F<b> -> 0 with d(a) = b."""
    F = F or QQ
    return FilteredComplex(
        F, [("a", 0, 0), ("b", 1, 0)], {("a", "b"): F.one}
    )


def test_differential_must_square_to_zero():
    F = QQ
    gens = [("a", 0, 0), ("b", 1, 0), ("c", 2, 0)]
    with pytest.raises(ComplexError):
        FilteredComplex(
            F, gens, {("a", "b"): F.one, ("b", "c"): F.one}
        )


def test_differential_must_raise_degree():
    F = QQ
    with pytest.raises(ComplexError):
        FilteredComplex(F, [("a", 0, 0), ("b", 0, 0)], {("a", "b"): F.one})


def test_filtration_must_not_decrease():
    F = QQ
    with pytest.raises(ComplexError):
        FilteredComplex(F, [("a", 0, 3), ("b", 1, 0)], {("a", "b"): F.one})


def test_field_cohomology_acyclic_pair():
    H = field_cohomology(two_term())
    assert all(dim == 0 for dim, _ in H.values())


def test_field_cohomology_circle():
    # two points, one edge between them (twice): H^0 = k, H^1 = k
    F = PrimeField(3)
    cx = FilteredComplex(
        F,
        [("p", 0, 0), ("q", 0, 0), ("e", 1, 0), ("f", 1, 0)],
        {
            ("p", "e"): F.one, ("q", "e"): F.neg(F.one),
            ("p", "f"): F.one, ("q", "f"): F.neg(F.one),
        },
    )
    H = field_cohomology(cx)
    assert H[0][0] == 1 and H[1][0] == 1


def test_expand_over_base_field_degrees_and_filtration():
    L = NovikovRing((2,), QQ)
    cx = FilteredComplex(
        L, [("a", 0, 0), ("b", 1, 0)], {("b", "a"): L.q}
    )
    exp = expand_over_base_field(cx, (-1, 2))
    # each generator appears once per q-power in the window
    assert len(exp.generators) == 2 * 3
    g = exp.by_label["a|q^1"]
    assert g.degree == 0 + 2 and g.filtration == 1
    # d(b|q^0) = a|q^1 survives inside the window
    assert exp.apply_d({"b|q^0": QQ.one}) == {"a|q^1": QQ.one}
    # d(b|q^1) = a|q^2 leaves the window and is dropped
    assert exp.apply_d({"b|q^1": QQ.one}) == {}


def test_truncate_below_filtration():
    F = QQ
    cx = FilteredComplex(F, [("a", 0, 0), ("b", 0, 5)], {})
    tr = truncate_below_filtration(cx, 3)
    assert [g.label for g in tr.generators] == ["a"]


def test_cone_of_identity_is_acyclic():
    cx = two_term()
    idm = ChainMap(
        cx, cx, {(g.label, g.label): QQ.one for g in cx.generators}
    )
    C = cone(idm)
    H = field_cohomology(C)
    assert all(dim == 0 for dim, _ in H.values())


def test_direct_sum_adds_cohomology():
    F = PrimeField(5)
    one = FilteredComplex(F, [("x", 0, 0)], {})
    s = direct_sum([one, one, two_term(F)])
    H = field_cohomology(s)
    assert H[0][0] == 2


def test_find_primitive():
    cx = two_term()
    prim = find_primitive(cx, {"b": QQ.one})
    assert prim is not None
    assert cx.apply_d(prim) == {"b": QQ.one}
    assert find_primitive(cx, {"a": QQ.one}) is None


def test_json_round_trip():
    cx = two_term()
    data = cx.to_json()
    assert data["generators"][0]["label"] == "a"
    assert len(data["differential"]) == 1
