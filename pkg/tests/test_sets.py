import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zariski import (
    DomainError,
    big_m,
    certify_round,
    closure,
    coset,
    components_of_set,
    dim_of_set,
    essential_order,
    is_curve,
    is_dense,
    is_potentially_dense,
    little_m,
    make_round,
    parse_element,
    parse_group,
    parse_set,
    torsion_coset,
)
from zariski.closed import canonicalize, minkowski_sum, translate, transversal
from zariski.groups import order_of
from zariski.rounds import UserSequence, split_trim
from zariski.sets import (
    CosetAtom,
    FgSubgroupAtom,
    FiniteAtom,
    RoundAtom,
    add_finite,
    closure_set,
    coset_set,
    is_infinite,
    is_irreducible_set,
    multiples_stay_infinite,
    round_set,
    translate_set,
    valid_round_base,
)
from zariski.syntax import print_coset

from conftest import UNBOUNDED, random_described, random_element

Z4W = parse_group("Z(4)^w")
Z = parse_group("Z")
ZT = parse_group("Z + Z(2)^w")


def cosets_of(X):
    return sorted(print_coset(c) for c in closure_set(X))


def test_round_and_its_double():
    X = parse_set("round(4) | 2*round(4)", Z4W)
    A, cert = closure(X)
    assert A.parts == (torsion_coset(Z4W, 4),)
    assert cert.isolated == []
    assert big_m(X).minimal == [2] and little_m(X) == 2
    assert not is_curve(X)
    assert is_irreducible_set(X)
    assert dim_of_set(X) == 2


@pytest.mark.parametrize(
    "text, closed, m, curve, dim",
    [
        ("round(4)", ["G[4]"], 4, True, 1),
        ("round(2)", ["G[2]"], 2, True, 1),
        ("2*round(4)", ["G[2]"], 2, True, 1),
        ("split(round(4), 0) | split(round(4), 1)", ["G[4]"], 4, True, 1),
        ("G[2] | {[Z(4)_0=1]}", ["G[2]", "[Z(4)_0=1] + G[1]"], 2, False, 1),
    ],
)
def test_sets_in_z4_power(text, closed, m, curve, dim):
    X = parse_set(text, Z4W)
    assert cosets_of(X) == sorted(closed)
    assert little_m(X) == m
    assert is_curve(X) == curve
    assert dim_of_set(X) == dim


def test_isolated_points_and_certificate():
    X = parse_set("[Z(4)_0=1] + round(2) | {[Z(4)_1=3]}", Z4W)
    A, cert = closure(X)
    assert cert.isolated == [parse_element("[Z(4)_1=3]", Z4W)]
    (anchor, order, witness), = cert.pieces
    assert order == 2 and isinstance(X.atoms[witness], RoundAtom)
    assert cert.index_set == [(2, parse_element("[Z(4)_0=1]", Z4W))]


def test_finite_subgroup_span():
    X = parse_set("span([Z(4)_0=1], [Z(4)_1=2])", Z4W)
    assert not is_infinite(X)
    assert len(closure_set(X)) == 8
    assert big_m(X).minimal == [] and little_m(X) == 0
    assert dim_of_set(X) == 0
    with pytest.raises(DomainError):
        is_curve(X)


@pytest.mark.parametrize("text", ["round(0)", "2*round(0) | {[Z_0=1]}", "span([Z_0=3])", "[Z_0=5] + -1*round(0)"])
def test_infinite_integer_sets_are_dense_curves(text):
    X = parse_set(text, Z)
    assert is_dense(X) and multiples_stay_infinite(X)
    assert is_curve(X) and dim_of_set(X) == 1
    assert is_potentially_dense(X).potentially_dense


def test_finite_integer_set():
    X = parse_set("{[Z_0=1], [Z_0=2]}", Z)
    assert not is_dense(X) and dim_of_set(X) == 0


@pytest.mark.parametrize(
    "text, dense, m, closed, curve",
    [
        ("round(0)", True, 0, ["G[0]"], True),
        ("round(2)", False, 2, ["G[2]"], True),
        ("G[2]", False, 2, ["G[2]"], True),
        ("span([Z_0=1])", True, 0, ["G[0]"], True),
        ("round(2) | [Z_0=1] + round(2)", False, 2, ["G[2]", "[Z_0=1] + G[2]"], False),
    ],
)
def test_mixed_unbounded_group(text, dense, m, closed, curve):
    X = parse_set(text, ZT)
    assert is_dense(X) == dense == multiples_stay_infinite(X)
    assert little_m(X) == m
    assert cosets_of(X) == sorted(closed)
    assert is_curve(X) == curve


def test_round_bases():
    X = parse_set("[Z(4)_0=1] + round(4)", Z4W)
    assert valid_round_base(X, parse_element("[Z(4)_7=2]", Z4W))
    Y = parse_set("[Z(4)_0=1] + round(2)", Z4W)
    assert valid_round_base(Y, parse_element("[Z(4)_0=3]", Z4W))
    assert not valid_round_base(Y, parse_element("[Z(4)_0=2]", Z4W))


def test_components_of_set():
    G = parse_group("Z(6)^w")
    X = parse_set("G[2] | G[3]", G)
    comps = components_of_set(X)
    assert {c.closure for c in comps} == {torsion_coset(G, 2), torsion_coset(G, 3)}
    for comp in comps:
        pieces = dict(comp.traces)
        assert set(pieces) == {0, 1}


def test_round_trace_becomes_finite():
    X = parse_set("round(4) | G[2]", Z4W)
    (comp,) = components_of_set(X)
    assert comp.closure == torsion_coset(Z4W, 4)
    Y = parse_set("round(4) | [Z(4)_0=1] + G[2]", Z4W)
    assert len(components_of_set(Y)) == 1


def test_empty_set_has_no_dimension():
    with pytest.raises(DomainError):
        dim_of_set(parse_set("{}", Z4W))


@given(st.integers(0, 5000))
def test_closure_is_translation_equivariant(seed):
    rng = random.Random(seed)
    G = parse_group(UNBOUNDED[seed % len(UNBOUNDED)])
    X = random_described(G, rng)
    a = random_element(G, rng)
    assert closure_set(translate_set(a, X)) == translate(a, closure_set(X))
    F = [random_element(G, rng) for _ in range(2)]
    expected = minkowski_sum(canonicalize([coset(f, 1) for f in F], G), closure_set(X))
    assert closure_set(add_finite(F, X)) == expected


@given(st.integers(0, 5000))
def test_closure_contains_the_set(seed):
    rng = random.Random(seed)
    G = parse_group(UNBOUNDED[seed % len(UNBOUNDED)])
    X = random_described(G, rng)
    A = closure_set(X)
    for atom in X.atoms:
        if isinstance(atom, FiniteAtom):
            assert all(x in A for x in atom.points)
        elif isinstance(atom, RoundAtom):
            assert all(atom.element(i) in A for i in range(20))


@given(st.integers(0, 5000))
def test_density_has_two_agreeing_routes(seed):
    rng = random.Random(seed)
    G = parse_group(UNBOUNDED[seed % len(UNBOUNDED)])
    X = random_described(G, rng)
    assert closure_set(X).is_whole == multiples_stay_infinite(X)
    assert is_dense(X) == multiples_stay_infinite(X)


@given(st.integers(0, 5000))
def test_m_of_x_lies_in_its_order_set(seed):
    rng = random.Random(seed)
    G = parse_group(UNBOUNDED[seed % len(UNBOUNDED)])
    X = random_described(G, rng)
    M = big_m(X)
    m = little_m(X)
    assert m == 0 or m in M
    for n in M.minimal:
        assert n in M and all(n * k in M for k in (2, 3))


# Dense sets and single round witnesses F + S


def round_witness(X):
    """(base, S) with base + S inside X and S round of order eo(G), read off the closure certificate."""
    G = X.group
    _, cert = closure(X)
    (anchor, order, w), = cert.pieces
    atom = X.atoms[w]
    if isinstance(atom, RoundAtom):
        return atom.base, atom.generator
    if isinstance(atom, CosetAtom):
        return atom.coset.anchor, make_round(G, order)
    assert isinstance(atom, FgSubgroupAtom) and atom.infinite
    h = next(g for g in atom.generators if order_of(g) == 0)
    return atom.offset or G.zero(), UserSequence(G, 0, lambda i: (i + 1) * h)


@pytest.mark.parametrize("text", ["Z(4)^w", "Z(6)^w", "Z(3)^w", "Z", "Q", "Z + Z(2)^w"])
def test_dense_sets_of_irreducible_groups_contain_one_round_translate(text):
    G = parse_group(text)
    n = essential_order(G)
    dense = 0
    for seed in range(120):
        X = random_described(G, random.Random(seed))
        if not is_dense(X):
            continue
        dense += 1
        base, S = round_witness(X)
        assert S.order_tag == n
        assert S.structural or certify_round(S, 300).ok
    assert dense >= 10


@pytest.mark.parametrize(
    "text, outside",
    [("Z(8) + Z(4)^w", "[Z(8)_0=1]"), ("Z(2)^w + Z(4)", "[Z(4)_0=1]"), ("Z(9) + Z(3)^w", "[Z(9)_0=1]"),
     ("Z(4)^2 + Z(2)^w", "[Z(4)_0=1]")],
)
def test_reducible_groups_have_dense_sets_without_a_single_witness(text, outside):
    G = parse_group(text)
    n = essential_order(G)
    g = parse_element(outside, G)
    core = torsion_coset(G, n)
    assert g not in core
    y0, y1, cert = split_trim(make_round(G, n), 200)
    assert cert.disjoint
    X = round_set(y0) | round_set(y1, base=g)
    for t in transversal(G, 0, n):
        if t not in core and t - g not in core:
            X = X | coset_set(coset(t, n))
    assert is_dense(X)
    # no atom of X is dense on its own: each closure piece is a proper coset of G[n]
    assert all(order == n for _, order, _ in closure(X)[1].pieces)
    # a witness F + Z would put Z inside (-f0 + Y0) and (g - f1 + Y1) at once;
    # those translates meet in a set that stops growing with the prefix
    p0, p1 = y0.prefix(200), y1.prefix(200)
    short = Counter(x - y for x in p0[:60] for y in p1[:60])
    full = Counter(x - y for x in p0 for y in p1)
    for i in range(12):
        for j in range(12):
            a = p0[i] - p1[j]
            assert short[a] == full[a] <= cert.max_translate_overlap
