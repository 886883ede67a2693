from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from zariski import parse_group
from zariski.groups import CYCLIC, FREE, OMEGA, QUASI, RATIONAL, Coord, Element

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

MIXED = parse_group("Z + Q + Zp(2,inf) + Z(4)^w + Z(2)^w + Z(3)")
TORSION_MIXED = parse_group("Z(4)^w + Z(2)^w + Z(3) + Z(9)^w")


def _value(c: Coord):
    if c.kind == FREE:
        return st.integers(-6, 6)
    if c.kind == RATIONAL:
        return st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3, 5]))
    if c.kind == QUASI:
        return st.builds(Fraction, st.integers(0, 15), st.sampled_from([c.prime**k for k in range(5)]))
    return st.integers(0, c.prime**c.power - 1)


def window(G, copies: int = 3) -> list[Coord]:
    out = []
    for family, k in G.families():
        for i in range(copies if k is OMEGA else min(k, copies)):
            out.append(Coord(family.kind, family.prime, family.power, i))
    return out


def elements(G, copies: int = 3):
    """Elements of G supported on the first few copies of each family."""
    coords = window(G, copies)
    return st.tuples(*[_value(c) for c in coords]).map(lambda vals: Element(G, list(zip(coords, vals))))


def torsion_elements(G, copies: int = 3):
    coords = [c for c in window(G, copies) if c.kind == CYCLIC]
    return st.tuples(*[_value(c) for c in coords]).map(lambda vals: Element(G, list(zip(coords, vals))))


@pytest.fixture
def mixed():
    return MIXED


UNBOUNDED = [
    "Z",
    "Q",
    "Zp(2,inf)",
    "Z + Z(2)^w",
    "Zp(3,inf)^w + Z(4)",
    "Q + Z(6)^w",
    "Z^2 + Z(3)",
    "Zp(2,inf) + Z(2)^w",
]


def random_element(G, rng, copies: int = 3):
    coords = []
    for c in window(G, copies):
        if rng.random() < 0.5:
            continue
        if c.kind == FREE:
            v = rng.randint(-5, 5)
        elif c.kind == RATIONAL:
            v = Fraction(rng.randint(-5, 5), rng.choice([1, 2, 3]))
        elif c.kind == QUASI:
            v = Fraction(rng.randrange(c.prime**2), c.prime**2)
        else:
            v = rng.randrange(c.prime**c.power)
        coords.append((c, v))
    return Element(G, coords)


def round_orders(G) -> list[int]:
    from zariski.groups import DomainError
    from zariski.rounds import make_round

    out = []
    for n in (0, 2, 3, 4, 6):
        try:
            make_round(G, n)
        except DomainError:
            continue
        out.append(n)
    return out


def random_described(G, rng, atoms: int | None = None):
    """A seeded union of finite sets, cosets, scaled round sets and spans."""
    from zariski.cosets import coset
    from zariski.groups import DomainError
    from zariski.rounds import certify_round, make_round, scale_generator
    from zariski.sets import DescribedSet, coset_set, finite_set, round_set, subgroup_set

    X = DescribedSet(G, ())
    for _ in range(atoms or rng.randint(1, 3)):
        kind = rng.choice(["finite", "coset", "round", "round", "span"])
        base = random_element(G, rng)
        try:
            if kind == "finite":
                X = X | finite_set(G, [random_element(G, rng) for _ in range(rng.randint(1, 3))])
            elif kind == "coset":
                X = X | coset_set(coset(base, rng.choice([0, 1, 2, 3, 4, 6])))
            elif kind == "round":
                gen = make_round(G, rng.choice(round_orders(G)))
                k = rng.choice([1, 1, 2, 3, -1])
                gen = gen if k == 1 else scale_generator(gen, k)
                cert = None if gen.structural else certify_round(gen, 300)
                if cert is not None and not cert.ok:
                    raise DomainError("scaled sequence is not round")
                X = X | round_set(gen, base, cert)
            else:
                X = X | subgroup_set(G, [random_element(G, rng) for _ in range(rng.randint(1, 2))], base)
        except DomainError:
            X = X | finite_set(G, [base])
    return X
