import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zariski import DomainError, certify_round, make_round, parse_element, parse_group, scale_generator, split_trim
from zariski.cosets import coset, torsion_coset
from zariski.groups import canonical_torsion_order, essential_order, in_torsion, torsion_subgroup
from zariski.oracle import check_round_prefix, random_bounded_descriptor
from zariski.rounds import ALL, CyclicRay, UserSequence, proper_divisors


@pytest.mark.parametrize(
    "text, n, kind",
    [
        ("Z", 0, "ray"),
        ("Q", 0, "ray"),
        ("Zp(2,inf)", 0, "escape"),
        ("Zp(3,inf)^w", 3, "canonical"),
        ("Z(4)^w", 4, "canonical"),
        ("Z(4)^w", 2, "canonical"),
        ("Z(6)^w", 6, "canonical"),
        ("Z + Z(2)^w", 0, "ray"),
    ],
)
def test_standard_rounds_certify(text, n, kind):
    gen = make_round(parse_group(text), n)
    assert gen.kind == kind and gen.label == f"round({n})"
    cert = certify_round(gen, 1000)
    assert cert.ok, cert.refutation
    assert all(in_torsion(x, n) for x in gen.prefix(50))


def test_basis_counts_are_one():
    cert = certify_round(make_round(parse_group("Z(6)^w"), 6), 1000)
    assert cert.max_counts == {1: 1, 2: 1, 3: 1}


@pytest.mark.parametrize(
    "text, n",
    [("Z(4)", 4), ("Z(4)^w", 8), ("Z(4)^w + Z(3)", 12), ("Z(4)^w", 1), ("Z(12)", 0), ("Z(2)^w + Z(4)", 4)],
)
def test_missing_rounds(text, n):
    with pytest.raises(DomainError):
        make_round(parse_group(text), n)


def test_certificate_refutes_a_bad_sequence():
    G = parse_group("Z(4)^w")
    e = [parse_element(f"[Z(4)_{i}=1]", G) for i in range(3)]
    # every term doubles to the same element 2*e0
    bad = UserSequence(G, 4, lambda i: e[0] + 2 * parse_element(f"[Z(4)_{i + 1}=1]", G))
    cert = certify_round(bad, 50)
    assert not cert.ok and cert.refutation["d"] == 2
    with pytest.raises(DomainError):
        certify_round(UserSequence(G, 2, lambda i: e[0]), 5)


def test_proper_divisors():
    assert proper_divisors(12) == [1, 2, 3, 4, 6]
    assert proper_divisors(0, 5) == [1, 2, 3, 4, 5]


def test_scaling():
    G = parse_group("Z(4)^w")
    doubled = scale_generator(make_round(G, 4), 2)
    assert doubled.order_tag == 2 and doubled.label == "2*round(4)"
    assert doubled.prefix(1) == [parse_element("[Z(4)_0=2]", G)]
    assert certify_round(doubled).ok
    with pytest.raises(DomainError):
        scale_generator(make_round(G, 4), 4)
    with pytest.raises(DomainError):
        scale_generator(make_round(G, 4), 0)
    Z = parse_group("Z")
    ray = scale_generator(make_round(Z, 0), -2)
    assert isinstance(ray, CyclicRay)
    assert ray.prefix(2) == [parse_element("[Z_0=-2]", Z), parse_element("[Z_0=-4]", Z)]


def test_split_halves_are_disjoint_and_round():
    gen = make_round(parse_group("Z(4)^w"), 4)
    y0, y1, cert = split_trim(gen)
    assert cert.disjoint and cert.max_translate_overlap == 1
    assert y0.label == "split(round(4), 0)"
    assert certify_round(y0, 300).ok and certify_round(y1, 300).ok
    assert not set(y0.prefix(100)) & set(y1.prefix(100))


def test_traces():
    G = parse_group("Z(4)^w")
    gen = make_round(G, 4)
    assert gen.trace(torsion_coset(G, 4)) is ALL
    assert gen.trace(torsion_coset(G, 2)) == []
    x = parse_element("[Z(4)_2=1]", G)
    assert gen.trace(coset(x, 2)) == [2]
    ray = make_round(parse_group("Z"), 0)
    Z = parse_group("Z")
    assert ray.trace(coset(parse_element("[Z_0=7]", Z), 1)) == [6]
    assert ray.trace(coset(parse_element("[Z_0=-7]", Z), 1)) == []


@pytest.mark.parametrize("text, n", [("Z", 0), ("Z(4)^w", 4), ("Z(6)^w", 6), ("Zp(2,inf)", 0)])
def test_independent_prefix_count_agrees(text, n):
    gen = make_round(parse_group(text), n)
    mine = certify_round(gen, 600)
    other = check_round_prefix(gen, 600, bound=mine.bound)
    assert other.passed == mine.ok
    assert {int(d): c for d, c in other.details["max_counts"].items()} == mine.max_counts


@given(st.integers(0, 10_000))
def test_rounds_exist_exactly_at_irreducible_orders(seed):
    rng = random.Random(seed)
    G = random_bounded_descriptor(rng)
    top = canonical_torsion_order(G, 0)
    top = top if top else 8 * 27
    for n in (d for d in range(1, top + 1) if top % d == 0):
        if canonical_torsion_order(G, n) != n:
            continue
        wanted = n != 1 and essential_order(torsion_subgroup(G, n)) == n
        try:
            gen = make_round(G, n)
        except DomainError:
            assert not wanted
            continue
        assert wanted
        assert certify_round(gen, 200).ok
