"""Zariski-closed sets as finite unions of cosets.

An :class:`AlgebraicSet` keeps an antichain of cosets (no part contains
another) in a fixed order.  Two antichains can still describe the same set
when several parts together fill a larger coset, so ``==`` compares
representations and :func:`same_set` compares the sets themselves.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cosets import (
    EMPTY,
    Coset,
    coordinate_level,
    coset,
    intersect as intersect_cosets,
    minkowski_sum as sum_cosets,
    subset as coset_subset,
    translate as translate_coset,
    whole_group,
)
from .groups import (
    CYCLIC,
    OMEGA,
    Coord,
    DomainError,
    Element,
    GroupDescriptor,
    canonical_torsion_order,
    divisors,
    essential_order,
    torsion_subgroup,
)

DEFAULT_MAX_TRANSVERSAL = 4096
INFINITE = math.inf


@dataclass(frozen=True)
class AlgebraicSet:
    group: GroupDescriptor
    parts: tuple[Coset, ...] = ()

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __contains__(self, x: Element) -> bool:
        return any(x in part for part in self.parts)

    def __repr__(self):
        return f"AlgebraicSet({list(self.parts)!r})"

    @property
    def is_empty(self) -> bool:
        return not self.parts

    @property
    def is_whole(self) -> bool:
        if any(part.is_whole for part in self.parts):
            return True
        return bool(self.parts) and coset_covered(whole_group(self.group), self)

    @property
    def is_finite(self) -> bool:
        return all(part.is_finite for part in self.parts)


def canonicalize(parts: Iterable[Coset], group: GroupDescriptor | None = None) -> AlgebraicSet:
    """Drop empty and redundant parts, then sort.

    >>> from zariski.groups import cyclic_group, OMEGA
    >>> from zariski.cosets import torsion_coset
    >>> G = cyclic_group(4, OMEGA)
    >>> canonicalize([torsion_coset(G, 2), torsion_coset(G, 4)]).parts
    (Coset(Element(0), 4),)
    """
    items = [p for p in parts if p is not EMPTY]
    if group is None:
        if not items:
            raise DomainError("an empty union needs an explicit group")
        group = items[0].group
    unique = sorted(set(items), key=Coset.sort_key)
    # larger orders first, so a part is only tested against possible supersets
    by_size = sorted(unique, key=lambda c: (c.order != 0, -c.order))
    kept: list[Coset] = []
    for part in by_size:
        if not any(coset_subset(part, other) for other in kept):
            kept.append(part)
    return AlgebraicSet(group, tuple(sorted(kept, key=Coset.sort_key)))


def empty_set(group: GroupDescriptor) -> AlgebraicSet:
    return AlgebraicSet(group, ())


def from_cosets(*parts: Coset) -> AlgebraicSet:
    return canonicalize(parts)


def whole(group: GroupDescriptor) -> AlgebraicSet:
    return AlgebraicSet(group, (whole_group(group),))


def union(A: AlgebraicSet, B: AlgebraicSet) -> AlgebraicSet:
    _check_groups(A, B)
    return canonicalize(A.parts + B.parts, A.group)


def intersect(A: AlgebraicSet, B: AlgebraicSet) -> AlgebraicSet:
    _check_groups(A, B)
    return canonicalize((intersect_cosets(a, b) for a in A.parts for b in B.parts), A.group)


def minkowski_sum(A: AlgebraicSet, B: AlgebraicSet) -> AlgebraicSet:
    _check_groups(A, B)
    return canonicalize((sum_cosets(a, b) for a in A.parts for b in B.parts), A.group)


def translate(a: Element, A: AlgebraicSet) -> AlgebraicSet:
    return canonicalize((translate_coset(a, p) for p in A.parts), A.group)


def is_subset(A: AlgebraicSet, B: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> bool:
    _check_groups(A, B)
    return all(coset_covered(part, B, max_transversal) for part in A.parts)


def same_set(A: AlgebraicSet, B: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> bool:
    """Set equality, independent of how the parts are chosen.

    >>> from zariski.groups import cyclic_group
    >>> from zariski.cosets import torsion_coset
    >>> G = cyclic_group(8) + cyclic_group(4, OMEGA)
    >>> g = Element(G, {Coord("C", 2, 3, 0): 1})
    >>> halves = from_cosets(torsion_coset(G, 4), coset(g, 4))
    >>> halves == whole(G), same_set(halves, whole(G))
    (False, True)
    """
    return is_subset(A, B, max_transversal) and is_subset(B, A, max_transversal)


def _check_groups(A: AlgebraicSet, B: AlgebraicSet):
    if A.group != B.group:
        raise DomainError("algebraic sets over different groups")


# ---------------------------------------------------------------------------
# Irreducible and connected components


def subgroup_index(G: GroupDescriptor, big: int, small: int):
    """[G[big] : G[small]] for G[small] inside G[big]; ``math.inf`` when infinite."""
    index = 1
    for family, mult in G.families():
        probe = Coord(family.kind, family.prime, family.power, 0)
        hi, lo = coordinate_level(probe, big), coordinate_level(probe, small)
        if hi == lo:
            continue
        if mult is OMEGA or hi == math.inf:
            return INFINITE
        index *= family.prime ** ((hi - lo) * mult)
    return index


def coset_covered(C: Coset, A: AlgebraicSet, cap: int = DEFAULT_MAX_TRANSVERSAL) -> bool:
    """Whether the coset C lies inside the union of the parts of A.

    Only the traces of A on C with finite index in C can matter for a
    finite cover, and all of them are unions of cosets of one common
    subgroup, so checking one point per such coset decides the question.
    """
    G, m = C.group, C.order
    traces = []
    for part in A.parts:
        trace = intersect_cosets(C, part)
        if trace is EMPTY:
            continue
        if trace.order == m:
            return True
        if subgroup_index(G, m, trace.order) != INFINITE:
            traces.append(trace)
    if sum(Fraction(1, subgroup_index(G, m, t.order)) for t in traces) < 1:
        return False
    common = canonical_torsion_order(G, math.gcd(*(t.order for t in traces)))
    return all(any(C.anchor + t in trace for trace in traces) for t in transversal(G, m, common, cap))


def transversal(G: GroupDescriptor, big: int, small: int, cap: int = DEFAULT_MAX_TRANSVERSAL) -> list[Element]:
    """Coset representatives of G[small] inside G[big], assuming finite index."""
    choices: list[list[tuple[Coord, object]]] = []
    for family, mult in G.families():
        probe = Coord(family.kind, family.prime, family.power, 0)
        hi, lo = coordinate_level(probe, big), coordinate_level(probe, small)
        if hi == lo:
            continue
        if mult is OMEGA or hi == math.inf:
            raise DomainError(f"G[{small}] has infinite index in G[{big}]")
        p = family.prime
        for i in range(mult):
            c = Coord(family.kind, p, family.power, i)
            if family.kind == CYCLIC:
                step = p ** (family.power - hi)
                values = [t * step for t in range(p ** (hi - lo))]
            else:
                values = [Fraction(t, p**hi) for t in range(p ** (hi - lo))]
            choices.append([(c, v) for v in values])
    count = math.prod(len(ch) for ch in choices)
    if count > cap:
        raise DomainError(f"transversal of size {count} exceeds the cap {cap}")
    return [Element(G, combo) for combo in itertools.product(*choices)]


def coset_components(part: Coset, cap: int = DEFAULT_MAX_TRANSVERSAL) -> list[Coset]:
    """Irreducible components of a single coset a + G[m]."""
    G, m = part.group, part.order
    n = essential_order(torsion_subgroup(G, m))
    if n == m:
        return [part]
    return [coset(part.anchor + t, n) for t in transversal(G, m, n, cap)]


def irreducible_components(A: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> list[Coset]:
    """The irreducible components of A, each a coset a + G[n] with eo(G[n]) = n."""
    pieces = [c for part in A.parts for c in coset_components(part, max_transversal)]
    return list(canonicalize(pieces, A.group).parts)


def is_irreducible(A: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> bool:
    return len(irreducible_components(A, max_transversal)) == 1


def connected_components(A: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> list[AlgebraicSet]:
    """Group irreducible components that are linked by chains of meeting pairs."""
    comps = irreducible_components(A, max_transversal)
    parent = list(range(len(comps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(comps)), 2):
        if intersect_cosets(comps[i], comps[j]) is not EMPTY:
            parent[find(i)] = find(j)
    groups: dict[int, list[Coset]] = {}
    for i, c in enumerate(comps):
        groups.setdefault(find(i), []).append(c)
    out = [canonicalize(g, A.group) for g in groups.values()]
    return sorted(out, key=lambda s: [c.sort_key() for c in s.parts])


def is_connected(A: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> bool:
    return len(connected_components(A, max_transversal)) <= 1


# ---------------------------------------------------------------------------
# Dimension


def irreducible_orders(G: GroupDescriptor, top: int) -> list[int]:
    """Canonical m dividing ``top`` (``top >= 1``) with G[m] irreducible, in increasing order."""
    return [
        m
        for m in divisors(top)
        if canonical_torsion_order(G, m) == m and essential_order(torsion_subgroup(G, m)) == m
    ]


def _longest_chain(orders: Sequence[int]) -> dict[int, int]:
    best: dict[int, int] = {}
    for m in orders:
        below = [best[d] for d in best if m % d == 0 and d != m]
        best[m] = 1 + max(below) if below else 0
    return best


def torsion_dimension(G: GroupDescriptor, n: int):
    """Length of the longest chain of irreducible closed sets ending at G[n].

    ``n`` must be canonical with G[n] irreducible.  Chains may be translated
    to pass through 0, so only the subgroups G[m] matter; G[m] is inside
    G[n] exactly when m divides n.
    """
    if canonical_torsion_order(G, n) != n or essential_order(torsion_subgroup(G, n)) != n:
        raise DomainError(f"G[{n}] is not an irreducible torsion subgroup")
    if n != 0:
        return _longest_chain(irreducible_orders(G, n))[n]
    # G itself, unbounded: an infinite ladder appears exactly when some
    # quasicyclic family has infinitely many copies
    if any(k is OMEGA for k in G.quasicyclic.values()):
        return INFINITE
    top = 1
    for (p, s), k in G.cyclic.items():
        if k is OMEGA:
            top = math.lcm(top, p**s)
    chains = _longest_chain(irreducible_orders(G, top))
    return 1 + max(chains.values())


def dim(A: AlgebraicSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL):
    """Combinatorial dimension: an int, or ``math.inf``."""
    if A.is_empty:
        raise DomainError("the empty set has no irreducible closed subsets")
    return max(torsion_dimension(A.group, c.order) for c in irreducible_components(A, max_transversal))
