import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zariski import OMEGA, DomainError, essential_order, exponent, is_irreducible_torsion, parse_group, torsion_subgroup
from zariski.groups import (
    GroupDescriptor,
    canonical_torsion_order,
    in_torsion,
    is_cofinite_zariski,
    multiply_group,
    order_of,
    scalar_mul,
)
from zariski.oracle import brute_essential_order, brute_exponent

from conftest import MIXED, TORSION_MIXED, elements, torsion_elements


@pytest.mark.parametrize(
    "text, exp, eo",
    [
        ("Z", 0, 0),
        ("Q", 0, 0),
        ("Zp(2,inf)", 0, 0),
        ("Z(12)", 12, 1),
        ("Z(4)^w + Z(2)^w", 4, 4),
        ("Z(6)^w", 6, 6),
        ("Z(4)^w + Z(3)", 12, 4),
        ("Z(8)^3 + Z(4)^w", 8, 4),
        ("0", 1, 1),
    ],
)
def test_exponent_and_essential_order(text, exp, eo):
    G = parse_group(text)
    assert exponent(G) == exp
    assert essential_order(G) == eo


@pytest.mark.parametrize("text", ["Z(4)^w + Z(2)^w", "Z(8)^3 + Z(4)^w", "Z(6)^w + Z(9)", "Z(2)^2 + Z(3)^w"])
def test_bounded_values_match_truncation_growth(text):
    G = parse_group(text)
    top = exponent(G)
    for n in (d for d in range(1, top + 1) if top % d == 0):
        assert exponent(torsion_subgroup(G, n)) == brute_exponent(G, n)
        assert essential_order(torsion_subgroup(G, n)) == brute_essential_order(G, n)


def test_descriptor_normalisation():
    assert GroupDescriptor(cyclic={(2, 1): 0}) == parse_group("0")
    assert parse_group("Z(2)^w + Z(2)^3") == parse_group("Z(2)^w")
    assert parse_group("Z(12)") == parse_group("Z(4) + Z(3)")
    with pytest.raises(DomainError):
        GroupDescriptor(cyclic={(4, 1): 1})
    with pytest.raises(DomainError):
        GroupDescriptor(quasicyclic={6: 1})


def test_torsion_and_multiples():
    G = parse_group("Z(4)^w + Z(2)^w")
    assert torsion_subgroup(G, 2) == parse_group("Z(2)^w")
    assert multiply_group(G, 2) == parse_group("Z(2)^w")
    assert torsion_subgroup(parse_group("Zp(3,inf)"), 9) == parse_group("Z(9)")
    assert torsion_subgroup(parse_group("Z + Q"), 5).is_trivial
    assert canonical_torsion_order(parse_group("Z(4)^w + Z(3)"), 24) == 12


def test_irreducibility_certificate():
    cert = is_irreducible_torsion(parse_group("Z(4)^w + Z(2)^w"), 4)
    assert cert.irreducible and cert.leading == {2: (2, OMEGA)}
    assert not is_irreducible_torsion(parse_group("Z(4) + Z(2)^w"), 4).irreducible
    assert is_irreducible_torsion(parse_group("Z"), 0).irreducible
    with pytest.raises(DomainError):
        is_irreducible_torsion(parse_group("Z(4)^w"), 8)


def test_cofinite_groups():
    assert is_cofinite_zariski(parse_group("Z"))
    assert is_cofinite_zariski(parse_group("Z(3)^w"))
    assert not is_cofinite_zariski(parse_group("Z(4)^w"))


@given(elements(MIXED), elements(MIXED), elements(MIXED))
def test_addition_is_an_abelian_group_law(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + (-x) == MIXED.zero()
    assert x - y == x + (-y)


@given(elements(MIXED), st.integers(-5, 5), st.integers(-5, 5))
def test_scalar_multiplication(x, a, b):
    assert scalar_mul(a + b, x) == scalar_mul(a, x) + scalar_mul(b, x)
    assert scalar_mul(a * b, x) == scalar_mul(a, scalar_mul(b, x))


@given(torsion_elements(TORSION_MIXED), st.integers(1, 40))
def test_order_and_torsion_membership(x, n):
    k = order_of(x)
    assert k >= 1 and scalar_mul(k, x).is_zero
    assert all(not scalar_mul(d, x).is_zero for d in range(1, k))
    assert in_torsion(x, n) == scalar_mul(n, x).is_zero
    assert in_torsion(x, n) == (n % k == 0)


@given(st.integers(0, 36), st.integers(0, 36))
def test_torsion_of_torsion(n, m):
    G = TORSION_MIXED
    assert torsion_subgroup(torsion_subgroup(G, n), m) == torsion_subgroup(G, math.gcd(n, m))
