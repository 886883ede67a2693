import pytest
from hypothesis import given
from hypothesis import strategies as st

from zariski import EMPTY, DomainError, coset, parse_element, parse_group, torsion_coset, whole_group
from zariski.cosets import (
    chain_length_bound,
    equals,
    intersect,
    minkowski_sum,
    negate,
    preimage_mul,
    subset,
    translate,
)
from zariski.groups import Element, in_torsion, scalar_mul, torsion_subgroup
from zariski.oracle import FiniteGroupInstance, check_coset_lemmas

from conftest import MIXED, elements

Z12 = parse_group("Z(12)")


def z12(a: int, n: int):
    return coset(parse_element(f"[Z(3)_0={a % 3}, Z(4)_0={a % 4}]", Z12), n)


def residues(E) -> set[int]:
    if E is EMPTY:
        return set()
    return {x for x in range(12) if z12(x, 1).anchor in E}


def test_z12_examples_against_enumeration():
    assert residues(z12(3, 2)) == {3, 9}
    assert subset(z12(3, 2), z12(0, 4))
    assert not subset(z12(1, 4), z12(0, 4))
    assert equals(z12(4, 3), z12(8, 3))
    assert not equals(z12(1, 4), z12(1, 2))
    both = intersect(z12(1, 4), z12(2, 6))
    assert residues(both) == {4, 10} and both == z12(4, 2)
    single = intersect(z12(1, 4), z12(0, 3))
    assert residues(single) == {4} and single.is_singleton
    assert minkowski_sum(z12(0, 2), z12(0, 3)) == z12(0, 6)
    assert negate(z12(1, 4)) == z12(11, 4)
    assert preimage_mul(2, z12(0, 3)) == z12(0, 6)


def test_empty_conventions():
    E = z12(1, 4)
    assert subset(EMPTY, E) and not subset(E, EMPTY)
    assert equals(EMPTY, EMPTY)
    assert intersect(EMPTY, E) is EMPTY
    Z4 = parse_group("Z(4)")
    assert preimage_mul(2, coset(parse_element("[Z(4)_0=1]", Z4), 1)) is EMPTY


def test_sum_in_infinite_power():
    G = parse_group("Z(4)^w")
    e0, e1 = parse_element("[Z(4)_0=1]", G), parse_element("[Z(4)_1=1]", G)
    assert minkowski_sum(coset(e0, 2), coset(e1, 4)) == coset(e0 + e1, 4)


def test_canonical_orders_and_anchors():
    G = parse_group("Z(4)^w + Z(3)")
    assert torsion_coset(G, 24) == torsion_coset(G, 12) == whole_group(G)
    assert torsion_coset(G, 8).order == 4
    x = parse_element("[Z(4)_0=3, Z(3)_0=1]", G)
    assert coset(x, 4).anchor == parse_element("[Z(3)_0=1]", G)
    assert coset(x, 1).anchor == x


def test_mixed_groups_are_rejected():
    with pytest.raises(DomainError):
        subset(torsion_coset(parse_group("Z(4)"), 2), torsion_coset(parse_group("Z(2)"), 2))


@pytest.mark.parametrize("moduli", [[12], [2, 4], [2, 2, 3], [8], [3, 3]])
def test_small_groups_exhaustively(moduli):
    report = check_coset_lemmas(FiniteGroupInstance(moduli))
    assert report.failures == 0, report.first_failure
    assert report.checks > 0


def test_trivial_group_is_vacuous():
    assert check_coset_lemmas(FiniteGroupInstance([])).passed


def test_chain_bound():
    assert chain_length_bound(12) == 7


orders = st.sampled_from([0, 1, 2, 3, 4, 6, 8, 12, 24])


@given(elements(MIXED), orders, elements(MIXED), orders, elements(MIXED))
def test_intersection_is_membership_meet(a, n, b, m, x):
    E1, E2 = coset(a, n), coset(b, m)
    meet = intersect(E1, E2)
    assert (meet is not EMPTY and x in meet) == (x in E1 and x in E2)
    for y in (a, b):
        assert (meet is not EMPTY and y in meet) == (y in E1 and y in E2)
    if meet is not EMPTY:
        assert subset(meet, E1) and subset(meet, E2)


@given(elements(MIXED), orders, elements(MIXED), orders)
def test_sum_contains_pairwise_sums(a, n, b, m):
    total = minkowski_sum(coset(a, n), coset(b, m))
    assert a + b in total
    assert total == minkowski_sum(coset(b, m), coset(a, n))
    assert torsion_subgroup(MIXED, n) == torsion_subgroup(MIXED, coset(a, n).order)


@given(elements(MIXED), orders, elements(MIXED), elements(MIXED))
def test_translate_and_negate(a, n, t, x):
    E = coset(a, n)
    assert (x + t in translate(t, E)) == (x in E)
    assert (-x in negate(E)) == (x in E)
    assert equals(translate(MIXED.zero(), E), E)


@given(st.integers(-6, 6), elements(MIXED), orders, elements(MIXED))
def test_preimage_membership(k, a, n, x):
    E = coset(a, n)
    pre = preimage_mul(k, E)
    assert (pre is not EMPTY and x in pre) == (scalar_mul(k, x) in E)


@given(elements(MIXED), orders, elements(MIXED))
def test_coset_membership_is_torsion_difference(a, n, x):
    assert (x in coset(a, n)) == in_torsion(x - a, n)
    assert isinstance(coset(a, n).anchor, Element)
