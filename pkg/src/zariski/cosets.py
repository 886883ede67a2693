"""Elementary algebraic sets: the empty set and cosets a + G[n].

Every torsion subgroup G[n] splits along the summand copies, so each
operation here works one coordinate at a time.  A coset is stored with a
canonical order (the exponent of G[n]) and a canonical anchor, which makes
``==`` on :class:`Coset` agree with equality of the underlying sets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .groups import (
    CYCLIC,
    FREE,
    QUASI,
    RATIONAL,
    Coord,
    DomainError,
    Element,
    GroupDescriptor,
    canonical_torsion_order,
    divisors,
    in_torsion,
    torsion_subgroup,
    valuation,
)

WHOLE = math.inf  # level of a coordinate that G[n] covers entirely


def coordinate_level(c, n: int):
    """How much of coordinate ``c`` the subgroup G[n] covers.

    For Z(p^s) the level is t with G[n] meeting the copy in Z(p^t); for
    Z(p^inf) it is v_p(n); for Z and Q it is 0 (only zero) or WHOLE.
    """
    kind = c.kind
    if kind == CYCLIC:
        return c.power if n == 0 else min(c.power, valuation(n, c.prime))
    if kind == QUASI:
        return WHOLE if n == 0 else valuation(n, c.prime)
    return WHOLE if n == 0 else 0


def reduce_coordinate(c, value, level):
    """Canonical representative of ``value`` modulo the level-``level`` part."""
    if level == WHOLE:
        return 0
    kind = c.kind
    if kind == CYCLIC:
        return value % (c.prime ** (c.power - level))
    if kind == QUASI:
        if level == 0:
            return value
        q = c.prime**level
        w = value * q
        return (w - math.floor(w)) / q
    return value


def reduce_anchor(x: Element, n: int) -> Element:
    """The canonical representative of x + G[n]."""
    if n == 0:
        return Element._raw(x.group, ())
    out = []
    for c, v in x.coords:
        w = reduce_coordinate(c, v, coordinate_level(c, n))
        if w:
            out.append((c, w))
    return Element._raw(x.group, tuple(out))


class _Empty:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())

    def __bool__(self):
        return False


EMPTY = _Empty()


@dataclass(frozen=True)
class Coset:
    """The set anchor + G[order], in canonical form.

    Build cosets with :func:`coset`; the constructor trusts its arguments.
    """

    anchor: Element
    order: int

    @property
    def group(self) -> GroupDescriptor:
        return self.anchor.group

    def __repr__(self):
        return f"Coset({self.anchor!r}, {self.order})"

    def __contains__(self, x: Element) -> bool:
        return in_torsion(x - self.anchor, self.order)

    def sort_key(self):
        return (self.order == 0, self.order, self.anchor.coords)

    @property
    def is_finite(self) -> bool:
        return torsion_subgroup(self.group, self.order).is_finite

    @property
    def is_singleton(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == canonical_torsion_order(self.group, 0)


ElementarySet = Union[Coset, _Empty]


def coset(anchor: Element, n: int) -> Coset:
    """anchor + G[n] in canonical form."""
    if n < 0:
        n = -n
    n = canonical_torsion_order(anchor.group, n)
    return Coset(reduce_anchor(anchor, n), n)


def torsion_coset(G: GroupDescriptor, n: int) -> Coset:
    """G[n] itself."""
    return coset(G.zero(), n)


def whole_group(G: GroupDescriptor) -> Coset:
    return torsion_coset(G, 0)


def point(x: Element) -> Coset:
    return Coset(x, 1)


def _same_group(a: Element, b: Element):
    if a.group is not b.group and a.group != b.group:
        raise DomainError("sets live in different groups")


def torsion_contains(G: GroupDescriptor, n: int, m: int) -> bool:
    """Whether G[n] is a subset of G[m]."""
    n = canonical_torsion_order(G, n)
    return canonical_torsion_order(G, math.gcd(n, m)) == n


def subset(E1: ElementarySet, E2: ElementarySet) -> bool:
    if E1 is EMPTY:
        return True
    if E2 is EMPTY:
        return False
    _same_group(E1.anchor, E2.anchor)
    return torsion_contains(E1.group, E1.order, E2.order) and in_torsion(E1.anchor - E2.anchor, E2.order)


def equals(E1: ElementarySet, E2: ElementarySet) -> bool:
    if E1 is EMPTY or E2 is EMPTY:
        return E1 is E2
    _same_group(E1.anchor, E2.anchor)
    return E1.order == E2.order and in_torsion(E1.anchor - E2.anchor, E1.order)


def translate(a: Element, E: ElementarySet) -> ElementarySet:
    if E is EMPTY:
        return EMPTY
    _same_group(a, E.anchor)
    return Coset(reduce_anchor(E.anchor + a, E.order), E.order)


def negate(E: ElementarySet) -> ElementarySet:
    if E is EMPTY:
        return EMPTY
    return Coset(reduce_anchor(-E.anchor, E.order), E.order)


def intersect(E1: ElementarySet, E2: ElementarySet) -> ElementarySet:
    """(a + G[n]) meet (b + G[m]) = z0 + G[gcd(n, m)], or EMPTY."""
    if E1 is EMPTY or E2 is EMPTY:
        return EMPTY
    a, n = E1.anchor, E1.order
    b, m = E2.anchor, E2.order
    _same_group(a, b)
    if not in_torsion(b - a, math.lcm(n, m)):
        return EMPTY
    # On each copy the two subgroups are nested, so the anchor of the smaller
    # one already solves both congruences there.
    da, db = dict(a.coords), dict(b.coords)
    z = {}
    for c in set(da) | set(db):
        if coordinate_level(c, n) <= coordinate_level(c, m):
            v = da.get(c, 0)
        else:
            v = db.get(c, 0)
        if v:
            z[c] = v
    return coset(Element._raw(a.group, tuple(sorted(z.items()))), math.gcd(n, m))


def minkowski_sum(E1: ElementarySet, E2: ElementarySet) -> ElementarySet:
    """(a1 + G[m1]) + (a2 + G[m2]) = (a1 + a2) + G[lcm(m1, m2)]."""
    if E1 is EMPTY or E2 is EMPTY:
        return EMPTY
    _same_group(E1.anchor, E2.anchor)
    return coset(E1.anchor + E2.anchor, math.lcm(E1.order, E2.order))


def _solve_coordinate(c: Coord, k: int, a, level):
    """Some x with k x in a + (level part of c), or None.  Here k >= 1."""
    if level == WHOLE:
        return 0
    kind = c.kind
    if kind == CYCLIC:
        M = c.prime ** (c.power - level)
        a %= M
        g = math.gcd(k, M)
        if a % g:
            return None
        Mg = M // g
        if Mg == 1:
            return 0
        return (a // g) * pow(k // g, -1, Mg) % Mg
    if kind == FREE:
        if a % k:
            return None
        return a // k
    if kind == RATIONAL:
        return Fraction(a) / k
    # quasicyclic copies are divisible, so an exact solution always exists
    p = c.prime
    v = valuation(k, p)
    u = k // p**v
    a = Fraction(a)
    e = valuation(a.denominator, p)
    top = p**e
    num = a.numerator * (pow(u, -1, top) if top > 1 else 0)
    return Fraction(num % top if top > 1 else 0, top * p**v)


def preimage_mul(k: int, E: ElementarySet) -> ElementarySet:
    """{x : k x in E}, which is x0 + G[k n] or EMPTY."""
    if E is EMPTY:
        return EMPTY
    G = E.group
    if k == 0:
        return whole_group(G) if in_torsion(E.anchor, E.order) else EMPTY
    if k < 0:
        E = negate(E)
        k = -k
    n = E.order
    out = []
    for c, v in E.anchor.coords:
        x = _solve_coordinate(c, k, v, coordinate_level(c, n))
        if x is None:
            return EMPTY
        if x:
            out.append((c, x))
    return coset(Element(G, out), k * n)


def contains(E: ElementarySet, x: Element) -> bool:
    return E is not EMPTY and x in E


def chain_length_bound(n: int) -> int:
    """Upper bound on the length of a strictly descending chain starting at a + G[n], n >= 1."""
    if n < 1:
        raise DomainError("the divisor bound needs a bounded starting coset")
    return 1 + len(divisors(n))
