import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zariski import DomainError, ParseError, parse_element, parse_group, parse_set, print_element, print_group, print_set
from zariski.groups import OMEGA, GroupDescriptor
from zariski.sets import CosetAtom, FgSubgroupAtom, FiniteAtom, RoundAtom
from zariski.syntax import scale_set

from conftest import MIXED, UNBOUNDED, elements, random_described

multiplicities = st.sampled_from([0, 1, 2, 3, OMEGA])
groups = st.builds(
    GroupDescriptor,
    multiplicities,
    multiplicities,
    st.dictionaries(st.sampled_from([2, 3, 5]), multiplicities, max_size=2),
    st.dictionaries(st.tuples(st.sampled_from([2, 3]), st.integers(1, 3)), multiplicities, max_size=3),
)


@given(groups)
def test_group_round_trip(G):
    assert parse_group(print_group(G)) == G


@given(elements(MIXED))
def test_element_round_trip(x):
    assert parse_element(print_element(x), MIXED) == x


@given(st.integers(0, 10_000))
def test_set_round_trip(seed):
    G = parse_group(UNBOUNDED[seed % len(UNBOUNDED)])
    X = random_described(G, random.Random(seed))
    text = print_set(X)
    Y = parse_set(text, G)
    assert Y == X
    assert print_set(Y) == text


def test_group_syntax():
    assert print_group(parse_group("Z(12)^2 + Z")) == "Z + Z(4)^2 + Z(3)^2"
    assert parse_group("Z(1)").is_trivial
    assert parse_group("Z^0 + Q").rational_rank == 1
    assert print_group(parse_group("0")) == "0"


def test_atoms():
    G = parse_group("Z(4)^w")
    X = parse_set("{[Z(4)_0=1], 0} | [Z(4)_1=2] + G[2] | round(4) | span([Z(4)_0=2]) | (round(2))", G)
    kinds = [type(a) for a in X.atoms]
    assert kinds == [FiniteAtom, CosetAtom, RoundAtom, FgSubgroupAtom, RoundAtom]
    assert parse_set("{}", G).atoms == ()
    assert print_set(parse_set("{}", G)) == "{}"


def test_named_sets_and_scaling():
    G = parse_group("Z(4)^w")
    S = parse_set("round(4)", G)
    X = parse_set("S | 2S | [Z(4)_0=1] + S", G, names={"S": S})
    assert print_set(X) == "round(4) | 2*round(4) | [Z(4)_0=1] + round(4)"
    with pytest.raises(DomainError):
        parse_set("T", G, names={"S": S})
    with pytest.raises(DomainError):
        scale_set(2, parse_set("G[2]", G))


def test_split_syntax():
    G = parse_group("Z(4)^w")
    X = parse_set("split(round(4), 1)", G)
    assert print_set(X) == "split(round(4), 1)"
    with pytest.raises(DomainError):
        parse_set("split(round(4), 2)", G)


@pytest.mark.parametrize(
    "text, group",
    [("round(1)", "Z(4)^w"), ("round(3)", "Z(4)^w"), ("[Z(4)_0=1, Z(4)_0=2] + G[2]", "Z(4)^w"),
     ("{[Z(12)_0=1]}", "Z(12)"), ("{[Z(2)_3=1]}", "Z(2)^2"), ("{[Zp(2,inf)_0=1/3]}", "Zp(2,inf)"),
     ("0*round(4)", "Z(4)^w")],
)
def test_semantic_errors(text, group):
    with pytest.raises(DomainError):
        parse_set(text, parse_group(group))


@pytest.mark.parametrize("text, position", [("round(", 6), ("G[2] |", 6), ("G[2] ! G[3]", 5), ("{[Z(4)_0=]}", 9)])
def test_parse_errors_carry_a_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_set(text, parse_group("Z(4)^w"))
    assert info.value.position == position
    assert "^" in str(info.value)


def test_bad_groups():
    with pytest.raises(ParseError):
        parse_group("Z(4)^x")
    with pytest.raises(DomainError):
        parse_group("Zp(4,inf)")
