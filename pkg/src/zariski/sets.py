"""Described subsets of a group and their Zariski closures.

A :class:`DescribedSet` is a finite union of atoms: finite sets, cosets,
translated round sets and cosets of finitely generated subgroups.  Since a
translate of a round set is dense in a coset of a torsion subgroup, closures
and most derived notions reduce to coset arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from . import closed
from .closed import DEFAULT_MAX_TRANSVERSAL, AlgebraicSet, canonicalize, coset_components, irreducible_components
from .cosets import (
    EMPTY,
    Coset,
    coset,
    intersect as intersect_cosets,
    point,
    subset as coset_subset,
    translate as translate_coset,
    whole_group,
)
from .groups import (
    OMEGA,
    DomainError,
    Element,
    GroupDescriptor,
    exponent,
    order_of,
    p_rank,
    torsion_subgroup,
)
from .rounds import ALL, RoundCertificate, RoundGenerator


@dataclass(frozen=True)
class FiniteAtom:
    points: tuple[Element, ...]


@dataclass(frozen=True)
class CosetAtom:
    coset: Coset


@dataclass(frozen=True, eq=False)
class RoundAtom:
    """base + S for a round generator S.

    Generators without a structural proof need a passing certificate.
    """

    base: Element
    generator: RoundGenerator
    certificate: RoundCertificate | None = None

    @property
    def order(self) -> int:
        return self.generator.order_tag

    @property
    def certified(self) -> bool:
        return self.generator.structural or (self.certificate is not None and self.certificate.ok)

    def element(self, i: int) -> Element:
        return self.base + self.generator.element(i)

    def __eq__(self, other):
        if not isinstance(other, RoundAtom):
            return NotImplemented
        return self.base == other.base and (
            self.generator is other.generator or self.generator.same_as(other.generator)
        )

    def __hash__(self):
        return hash((self.base, self.generator.order_tag, self.generator.kind))


@dataclass(frozen=True)
class FgSubgroupAtom:
    """offset + <generators>."""

    generators: tuple[Element, ...]
    offset: Element | None = None

    def __post_init__(self):
        if self.offset is not None and self.offset.is_zero:
            object.__setattr__(self, "offset", None)

    @property
    def infinite(self) -> bool:
        return any(order_of(g) == 0 for g in self.generators)


Atom = Union[FiniteAtom, CosetAtom, RoundAtom, FgSubgroupAtom]


@dataclass(frozen=True)
class DescribedSet:
    group: GroupDescriptor
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        for atom in self.atoms:
            for x in _atom_elements(atom):
                if x.group != self.group:
                    raise DomainError("atom lives in a different group")

    def __or__(self, other: "DescribedSet") -> "DescribedSet":
        if other.group != self.group:
            raise DomainError("union of sets over different groups")
        return DescribedSet(self.group, self.atoms + other.atoms)

    def __repr__(self):
        return f"DescribedSet({list(self.atoms)!r})"


def _atom_elements(atom) -> list[Element]:
    if isinstance(atom, FiniteAtom):
        return list(atom.points)
    if isinstance(atom, CosetAtom):
        return [atom.coset.anchor]
    if isinstance(atom, RoundAtom):
        return [atom.base]
    return list(atom.generators) + ([atom.offset] if atom.offset is not None else [])


# convenience constructors -------------------------------------------------


def finite_set(G: GroupDescriptor, points: Iterable[Element]) -> DescribedSet:
    return DescribedSet(G, (FiniteAtom(tuple(points)),))


def coset_set(E: Coset) -> DescribedSet:
    return DescribedSet(E.group, (CosetAtom(E),))


def round_set(gen: RoundGenerator, base: Element | None = None, certificate=None) -> DescribedSet:
    G = gen.group
    return DescribedSet(G, (RoundAtom(base if base is not None else G.zero(), gen, certificate),))


def subgroup_set(G: GroupDescriptor, generators: Iterable[Element], offset: Element | None = None) -> DescribedSet:
    return DescribedSet(G, (FgSubgroupAtom(tuple(generators), offset),))


def translate_set(a: Element, X: DescribedSet) -> DescribedSet:
    atoms = []
    for atom in X.atoms:
        if isinstance(atom, FiniteAtom):
            atoms.append(FiniteAtom(tuple(a + x for x in atom.points)))
        elif isinstance(atom, CosetAtom):
            atoms.append(CosetAtom(translate_coset(a, atom.coset)))
        elif isinstance(atom, RoundAtom):
            atoms.append(RoundAtom(atom.base + a, atom.generator, atom.certificate))
        else:
            off = atom.offset if atom.offset is not None else X.group.zero()
            atoms.append(FgSubgroupAtom(atom.generators, off + a))
    return DescribedSet(X.group, tuple(atoms))


def add_finite(F: Iterable[Element], X: DescribedSet) -> DescribedSet:
    """F + X for a finite set F, as a union of translates."""
    out = DescribedSet(X.group, ())
    for a in F:
        out = out | translate_set(a, X)
    return out


# ---------------------------------------------------------------------------
# Closure


def finite_subgroup(generators: Sequence[Element], G: GroupDescriptor) -> list[Element]:
    """All elements of the subgroup generated by torsion elements."""
    seen = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        h = frontier.pop()
        for g in generators:
            y = h + g
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen, key=Element.sort_key)


def atom_closure(atom, G: GroupDescriptor) -> list[Coset]:
    if isinstance(atom, FiniteAtom):
        return [point(x) for x in atom.points]
    if isinstance(atom, CosetAtom):
        return [atom.coset]
    if isinstance(atom, RoundAtom):
        if not atom.certified:
            raise DomainError("round atom has no passing certificate")
        return [coset(atom.base, atom.order)]
    off = atom.offset if atom.offset is not None else G.zero()
    if atom.infinite:
        return [whole_group(G)]
    return [point(off + h) for h in finite_subgroup(atom.generators, G)]


@dataclass
class ClosureCertificate:
    isolated: list[Element]
    pieces: list[tuple[Element, int, int]]  # (anchor, order, index of witness atom)
    index_set: list[tuple[int, Element]]

    def as_dict(self, element_json):
        return {
            "isolated": [element_json(x) for x in self.isolated],
            "pieces": [
                {"anchor": element_json(a), "order": n, "witness_atom": w} for a, n, w in self.pieces
            ],
            "index_set": [[n, element_json(a)] for n, a in self.index_set],
        }


def closure(X: DescribedSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL):
    """The Zariski closure of X and a certificate splitting it into D and round pieces."""
    G = X.group
    per_atom = [atom_closure(atom, G) for atom in X.atoms]
    result = canonicalize((c for parts in per_atom for c in parts), G)
    isolated, pieces = [], []
    for comp in irreducible_components(result, max_transversal):
        if comp.is_singleton:
            isolated.append(comp.anchor)
            continue
        witness = next(
            i for i, parts in enumerate(per_atom) if any(coset_subset(comp, c) for c in parts)
        )
        pieces.append((comp.anchor, comp.order, witness))
    index_set = []
    for atom in X.atoms:
        if isinstance(atom, RoundAtom):
            index_set.append((atom.order, atom.base))
        elif isinstance(atom, CosetAtom):
            index_set += [(c.order, c.anchor) for c in coset_components(atom.coset, max_transversal) if not c.is_singleton]
        elif isinstance(atom, FgSubgroupAtom) and atom.infinite:
            index_set.append((0, atom.offset if atom.offset is not None else G.zero()))
    return result, ClosureCertificate(isolated, pieces, index_set)


def closure_set(X: DescribedSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> AlgebraicSet:
    return closure(X, max_transversal)[0]


def isolated_points(X: DescribedSet) -> list[Element]:
    return closure(X)[1].isolated


def is_infinite(X: DescribedSet) -> bool:
    for atom in X.atoms:
        if isinstance(atom, RoundAtom):
            return True
        if isinstance(atom, CosetAtom) and not atom.coset.is_finite:
            return True
        if isinstance(atom, FgSubgroupAtom) and atom.infinite:
            return True
    return False


# ---------------------------------------------------------------------------
# M(X) and m(X)


@dataclass(frozen=True)
class OrderSet:
    """{n >= 1 : some generator g divides n}, the shape every M(X) takes."""

    generators: frozenset = frozenset()

    def __contains__(self, n: int) -> bool:
        return n >= 1 and any(n % g == 0 for g in self.generators)

    @property
    def minimal(self) -> list[int]:
        gens = sorted(self.generators)
        return [g for g in gens if not any(g % h == 0 and h != g for h in gens)]

    @property
    def minimum(self) -> int:
        return min(self.generators) if self.generators else 0


def big_m(X: DescribedSet) -> OrderSet:
    """Orders n >= 1 along which X meets some coset of G[n] in infinitely many points."""
    G = X.group
    gens = set()
    infinite_primes = [p for p in G.primes() if p_rank(G, p) is OMEGA]
    for atom in X.atoms:
        if isinstance(atom, CosetAtom):
            # G[gcd(n, m)] is infinite iff some prime p | gcd(n, m) has G[p] infinite
            m = atom.coset.order
            gens.update(p for p in infinite_primes if m == 0 or m % p == 0)
        elif isinstance(atom, RoundAtom):
            if atom.order != 0:
                # G[n_S] inside G[n] iff n_S divides n, as n_S is canonical
                gens.add(atom.order)
        # finite atoms and finitely generated subgroups never qualify: a
        # subgroup H meets a coset of G[n] in a coset of the finite H[n]
    return OrderSet(frozenset(gens))


def little_m(X: DescribedSet) -> int:
    return big_m(X).minimum


# ---------------------------------------------------------------------------
# Density


def is_dense(X: DescribedSet) -> bool:
    """closure(X) = G; for unbounded G this is cross-checked against the mX criterion."""
    dense = closure_set(X).is_whole
    if exponent(X.group) == 0:
        other = multiples_stay_infinite(X)
        if other != dense:
            raise AssertionError(f"density verdicts disagree for {X!r}: closure {dense}, mX {other}")
    return dense


def kill_multiplier(atom, G: GroupDescriptor):
    """Some k >= 1 with k * atom finite, or None when every multiple is infinite."""
    if isinstance(atom, FiniteAtom):
        return 1
    if isinstance(atom, CosetAtom):
        e = exponent(torsion_subgroup(G, atom.coset.order))
        return e if e else None
    if isinstance(atom, RoundAtom):
        return atom.order if atom.order else None
    orders = [order_of(g) for g in atom.generators]
    return None if 0 in orders else math.lcm(1, *orders)


def multiples_stay_infinite(X: DescribedSet) -> bool:
    """Whether m X is infinite for every m >= 1.

    One multiplier killing every atom at once is the lcm of the individual
    ones, so the condition fails exactly when every atom has a multiplier.
    """
    return any(kill_multiplier(atom, X.group) is None for atom in X.atoms)


@dataclass
class PotentialDensity:
    dense: bool
    potentially_dense: bool
    cardinality_note: str = "countable group, so |G| <= continuum holds"
    witness: str = "realize_closure builds a precompact metric topology with the same closure"


def is_potentially_dense(X: DescribedSet) -> PotentialDensity:
    d = is_dense(X)
    return PotentialDensity(d, d)


# ---------------------------------------------------------------------------
# Curves


def _some_point(X: DescribedSet) -> Element:
    for atom in X.atoms:
        if isinstance(atom, FiniteAtom) and atom.points:
            return atom.points[0]
        if isinstance(atom, CosetAtom):
            return atom.coset.anchor
        if isinstance(atom, RoundAtom):
            return atom.element(0)
        if isinstance(atom, FgSubgroupAtom):
            return atom.offset if atom.offset is not None else X.group.zero()
    raise DomainError("the set is empty")


def is_curve(X: DescribedSet) -> bool:
    """Whether X is a translate of a round set.

    With n = m(X), no proper divisor of n lies in M(X), so all traces on
    cosets of smaller torsion subgroups are finite; it remains to check
    that X sits inside one coset of G[n].
    """
    if not is_infinite(X):
        raise DomainError("curves are infinite")
    n = little_m(X)
    target = coset(_some_point(X), n)
    return all(coset_subset(c, target) for c in closure_set(X).parts)


def valid_round_base(X: DescribedSet, b: Element) -> bool:
    """For a curve X with n = m(X): whether X - b is n-round, i.e. b in X + G[n]."""
    if not is_curve(X):
        raise DomainError("round bases are defined for curves")
    n = little_m(X)
    # X lies in one coset of G[n] and X + G[n] is that coset
    return b in coset(_some_point(X), n)


# ---------------------------------------------------------------------------
# Components, irreducibility and dimension


def is_irreducible_set(X: DescribedSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> bool:
    A = closure_set(X, max_transversal)
    return len(irreducible_components(A, max_transversal)) == 1


@dataclass
class SetComponent:
    closure: Coset
    traces: list = field(default_factory=list)  # (atom index, Atom restricted to the component)


def atom_trace(atom, C: Coset, G: GroupDescriptor):
    """atom meet C as an atom, or None when empty."""
    if isinstance(atom, FiniteAtom):
        pts = tuple(x for x in atom.points if x in C)
        return FiniteAtom(pts) if pts else None
    if isinstance(atom, CosetAtom):
        E = intersect_cosets(atom.coset, C)
        return None if E is EMPTY else CosetAtom(E)
    if isinstance(atom, RoundAtom):
        hits = atom.generator.trace(translate_coset(-atom.base, C))
        if hits is ALL:
            return atom
        pts = tuple(atom.element(i) for i in hits)
        return FiniteAtom(pts) if pts else None
    off = atom.offset if atom.offset is not None else G.zero()
    if atom.infinite:
        if C.is_whole:
            return atom
        raise DomainError("an infinite subgroup atom only fits inside the whole group")
    pts = tuple(off + h for h in finite_subgroup(atom.generators, G) if off + h in C)
    return FiniteAtom(pts) if pts else None


def components_of_set(X: DescribedSet, max_transversal: int = DEFAULT_MAX_TRANSVERSAL) -> list[SetComponent]:
    """X cut along the irreducible components of its closure."""
    G = X.group
    out = []
    for C in irreducible_components(closure_set(X, max_transversal), max_transversal):
        comp = SetComponent(C)
        for i, atom in enumerate(X.atoms):
            t = atom_trace(atom, C, G)
            if t is not None:
                comp.traces.append((i, t))
        out.append(comp)
    return out


def dim_of_set(X: DescribedSet):
    """Longest chain of irreducible relatively closed subsets of X.

    Such subsets correspond to irreducible cosets C with X meet C dense in C.
    Apart from single points these come from three sources: cosets inside a
    coset atom, the closures base + G[n] of round atoms, and G itself for an
    infinite subgroup atom.
    """
    G = X.group
    if not X.atoms or all(isinstance(a, FiniteAtom) and not a.points for a in X.atoms):
        raise DomainError("the empty set has no irreducible closed subsets")
    coset_atoms = [a.coset for a in X.atoms if isinstance(a, CosetAtom)]
    special = []
    for atom in X.atoms:
        if isinstance(atom, RoundAtom):
            special.append(coset(atom.base, atom.order))
        elif isinstance(atom, FgSubgroupAtom) and atom.infinite:
            special.append(whole_group(G))
    special = sorted(set(special), key=Coset.sort_key)

    def inside_coset_atoms(N: Coset):
        """Best chain length of an irreducible coset strictly inside N and inside a coset atom."""
        best = 0
        for E in coset_atoms:
            T = intersect_cosets(E, N)
            if T is EMPTY:
                continue
            for comp in coset_components(T):
                if comp.order == N.order:
                    # N lies inside the coset atom, so its whole chain does too
                    best = max(best, closed.torsion_dimension(G, N.order) - 1)
                else:
                    best = max(best, closed.torsion_dimension(G, comp.order))
        return best

    value = {}
    # increasing inclusion order: smaller orders come first among nested cosets
    for N in sorted(special, key=lambda c: (c.order == 0, c.order)):
        below = [value[M] for M in value if M != N and coset_subset(M, N)]
        value[N] = 1 + max([0, inside_coset_atoms(N)] + below)
    best = max(value.values(), default=0)
    for E in coset_atoms:
        best = max(best, closed.dim(AlgebraicSet(G, (E,))))
    return best

