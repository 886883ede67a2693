"""Countable abelian groups given by their summand multiplicities.

A group is a direct sum of copies of Z, Q, the quasicyclic groups Z(p^inf)
and the cyclic groups Z(p^s).  Every multiplicity is either a non-negative
int or ``OMEGA`` (countably many copies).

>>> G = free_group(1) + cyclic_group(4, OMEGA)
>>> torsion_subgroup(G, 2)
GroupDescriptor(cyclic={(2, 1): w})
>>> essential_order(cyclic_group(4, OMEGA) + cyclic_group(2, OMEGA))
4
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from sympy import factorint, isprime


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class _Omega:
    """The countably infinite cardinal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "w"

    def __reduce__(self):
        return (_Omega, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("omega-cardinal")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


OMEGA = _Omega()
Cardinal = Union[int, _Omega]


def is_finite_cardinal(k: Cardinal) -> bool:
    return k is not OMEGA


def card_add(a: Cardinal, b: Cardinal) -> Cardinal:
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b


def _check_cardinal(k) -> Cardinal:
    if k is OMEGA:
        return k
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise DomainError(f"multiplicity must be a non-negative int or OMEGA, got {k!r}")
    return k


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n`` (``n`` must be nonzero)."""
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=4096)
def prime_powers(n: int) -> tuple[tuple[int, int], ...]:
    """Factorization of ``n >= 1`` as sorted ``(p, e)`` pairs."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    return tuple(sorted(factorint(n).items()))


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    out = [1]
    for p, e in prime_powers(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return tuple(sorted(out))


# Family kinds.  A family is one isomorphism type of summand; its copies are
# indexed 0, 1, 2, ...
FREE, RATIONAL, QUASI, CYCLIC = "Z", "Q", "P", "C"


class Family(NamedTuple):
    kind: str
    prime: int = 0
    power: int = 0


class Coord(NamedTuple):
    """Address of one summand copy: family data plus the copy index."""

    kind: str
    prime: int
    power: int
    index: int

    @property
    def family(self) -> Family:
        return Family(self.kind, self.prime, self.power)


@dataclass(frozen=True, eq=False)
class GroupDescriptor:
    """Direct sum Z^a + Q^b + sum Z(p^inf)^k_p + sum Z(p^s)^k_ps.

    ``quasicyclic`` maps primes to multiplicities and ``cyclic`` maps
    ``(p, s)`` to multiplicities.  Zero entries are dropped, so two
    descriptors are equal exactly when they describe the same summands.
    """

    free_rank: Cardinal = 0
    rational_rank: Cardinal = 0
    quasicyclic: Mapping[int, Cardinal] = field(default_factory=dict)
    cyclic: Mapping[tuple[int, int], Cardinal] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "free_rank", _check_cardinal(self.free_rank))
        object.__setattr__(self, "rational_rank", _check_cardinal(self.rational_rank))
        quasi = {}
        for p, k in dict(self.quasicyclic).items():
            if not isprime(p):
                raise DomainError(f"quasicyclic summand needs a prime, got {p}")
            if _check_cardinal(k) != 0:
                quasi[int(p)] = k
        cyc = {}
        for (p, s), k in dict(self.cyclic).items():
            if not isprime(p) or s < 1:
                raise DomainError(f"cyclic summand needs a prime power, got {p}^{s}")
            if _check_cardinal(k) != 0:
                cyc[(int(p), int(s))] = k
        object.__setattr__(self, "quasicyclic", _FrozenMap(sorted(quasi.items())))
        object.__setattr__(self, "cyclic", _FrozenMap(sorted(cyc.items())))
        object.__setattr__(
            self,
            "_hash",
            hash((self.free_rank, self.rational_rank, tuple(self.quasicyclic.items()), tuple(self.cyclic.items()))),
        )

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GroupDescriptor):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.free_rank == other.free_rank
            and self.rational_rank == other.rational_rank
            and self.quasicyclic == other.quasicyclic
            and self.cyclic == other.cyclic
        )

    def __repr__(self):
        parts = []
        if self.free_rank:
            parts.append(f"free_rank={self.free_rank!r}")
        if self.rational_rank:
            parts.append(f"rational_rank={self.rational_rank!r}")
        if self.quasicyclic:
            parts.append(f"quasicyclic={dict(self.quasicyclic)!r}")
        if self.cyclic:
            parts.append(f"cyclic={dict(self.cyclic)!r}")
        return f"GroupDescriptor({', '.join(parts)})"

    def __add__(self, other: "GroupDescriptor") -> "GroupDescriptor":
        quasi = dict(self.quasicyclic)
        for p, k in other.quasicyclic.items():
            quasi[p] = card_add(quasi.get(p, 0), k)
        cyc = dict(self.cyclic)
        for key, k in other.cyclic.items():
            cyc[key] = card_add(cyc.get(key, 0), k)
        return GroupDescriptor(
            card_add(self.free_rank, other.free_rank),
            card_add(self.rational_rank, other.rational_rank),
            quasi,
            cyc,
        )

    def families(self) -> Iterator[tuple[Family, Cardinal]]:
        if self.free_rank:
            yield Family(FREE), self.free_rank
        if self.rational_rank:
            yield Family(RATIONAL), self.rational_rank
        for p, k in self.quasicyclic.items():
            yield Family(QUASI, p), k
        for (p, s), k in self.cyclic.items():
            yield Family(CYCLIC, p, s), k

    def multiplicity(self, family: Family) -> Cardinal:
        kind, p, s = family
        if kind == FREE:
            return self.free_rank
        if kind == RATIONAL:
            return self.rational_rank
        if kind == QUASI:
            return self.quasicyclic.get(p, 0)
        return self.cyclic.get((p, s), 0)

    @property
    def is_trivial(self) -> bool:
        return not (self.free_rank or self.rational_rank or self.quasicyclic or self.cyclic)

    @property
    def is_finite(self) -> bool:
        return (
            not self.free_rank
            and not self.rational_rank
            and not self.quasicyclic
            and all(k is not OMEGA for k in self.cyclic.values())
        )

    @property
    def is_torsion(self) -> bool:
        return not self.free_rank and not self.rational_rank

    @property
    def is_bounded(self) -> bool:
        return not (self.free_rank or self.rational_rank or self.quasicyclic)

    def order(self) -> Cardinal:
        """Number of elements; OMEGA for infinite groups."""
        if not self.is_finite:
            return OMEGA
        return math.prod(p ** (s * k) for (p, s), k in self.cyclic.items())

    def primes(self) -> list[int]:
        return sorted(set(self.quasicyclic) | {p for p, _ in self.cyclic})

    def zero(self) -> "Element":
        return Element(self, ())

    def element(self, coords: Mapping[Coord, object] | Iterable[tuple[Coord, object]] = ()) -> "Element":
        return Element(self, coords)


class _FrozenMap(dict):
    """A hashable, read-only dict used inside frozen descriptors."""

    def __hash__(self):
        return hash(tuple(self.items()))

    def _readonly(self, *args, **kwargs):
        raise TypeError("descriptor maps are read-only")

    __setitem__ = __delitem__ = clear = pop = popitem = setdefault = update = _readonly

    def __reduce__(self):
        return (_FrozenMap, (list(self.items()),))


def free_group(rank: Cardinal = 1) -> GroupDescriptor:
    return GroupDescriptor(free_rank=rank)


def rational_group(rank: Cardinal = 1) -> GroupDescriptor:
    return GroupDescriptor(rational_rank=rank)


def quasicyclic_group(p: int, mult: Cardinal = 1) -> GroupDescriptor:
    return GroupDescriptor(quasicyclic={p: mult})


def cyclic_group(n: int, mult: Cardinal = 1) -> GroupDescriptor:
    """Z(n)^mult split into its primary parts."""
    if n < 1:
        raise DomainError(f"cyclic group order must be positive, got {n}")
    if n == 1:
        return GroupDescriptor()
    return GroupDescriptor(cyclic={(p, e): mult for p, e in prime_powers(n)})



def coordinate_modulus(c: Coord | Family) -> int:
    """Order of a generator of a cyclic coordinate (0 for the others)."""
    return c.prime**c.power if c.kind == CYCLIC else 0


def _normalize(c: Coord, value):
    kind = c.kind
    if kind == CYCLIC:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainError(f"cyclic coordinate needs an integer value, got {value}")
            value = value.numerator
        return int(value) % (c.prime**c.power)
    if kind == FREE:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainError(f"free coordinate needs an integer value, got {value}")
            value = value.numerator
        return int(value)
    if kind == RATIONAL:
        return Fraction(value)
    value = Fraction(value)
    d = value.denominator
    while d % c.prime == 0:
        d //= c.prime
    if d != 1:
        raise DomainError(f"Z({c.prime}^inf) coordinate needs a {c.prime}-power denominator, got {value}")
    return value - math.floor(value)


class Element:
    """An element with finite support, stored as sorted ``(Coord, value)`` pairs.

    Values are ints for Z, Fractions for Q, residues in ``[0, p^s)`` for
    Z(p^s) and Fractions in ``[0, 1)`` with p-power denominator for Z(p^inf).
    """

    __slots__ = ("group", "coords", "_hash")

    def __init__(self, group: GroupDescriptor, coords=()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        clean = {}
        for c, v in items:
            c = Coord(*c)
            mult = group.multiplicity(c.family)
            if mult == 0 or (mult is not OMEGA and not 0 <= c.index < mult):
                raise DomainError(f"coordinate {c} is outside the group")
            if c.index < 0:
                raise DomainError(f"negative coordinate index {c.index}")
            v = _normalize(c, v)
            if v:
                clean[c] = v
        self.group = group
        self.coords = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, group, coords):
        obj = cls.__new__(cls)
        obj.group = group
        obj.coords = coords
        obj._hash = None
        return obj

    def __repr__(self):
        if not self.coords:
            return "Element(0)"
        inner = ", ".join(f"{c.kind}{_family_suffix(c)}_{c.index}={v}" for c, v in self.coords)
        return f"Element({inner})"

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords and (self.group is other.group or self.group == other.group)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __bool__(self):
        return bool(self.coords)

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def get(self, c: Coord):
        for key, v in self.coords:
            if key == c:
                return v
        return 0

    def as_dict(self) -> dict:
        return dict(self.coords)

    def sort_key(self):
        return self.coords

    def _combine(self, other: "Element", sign: int) -> "Element":
        if other.group is not self.group and other.group != self.group:
            raise DomainError("elements belong to different groups")
        if not other.coords:
            return self
        out = dict(self.coords)
        for c, v in other.coords:
            w = out.get(c, 0) + v if sign > 0 else out.get(c, 0) - v
            w = _reduce(c, w)
            if w:
                out[c] = w
            else:
                out.pop(c, None)
        return Element._raw(self.group, tuple(sorted(out.items())))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        out = []
        for c, v in self.coords:
            w = _reduce(c, -v)
            if w:
                out.append((c, w))
        return Element._raw(self.group, tuple(out))

    def __rmul__(self, k: int):
        return scalar_mul(k, self)

    def support_indices(self) -> int:
        """Largest copy index used, or -1 for zero."""
        return max((c.index for c, _ in self.coords), default=-1)


def _family_suffix(c) -> str:
    if c.kind == QUASI:
        return f"({c.prime},inf)"
    if c.kind == CYCLIC:
        return f"({c.prime ** c.power})"
    return ""


def _reduce(c: Coord, v):
    kind = c.kind
    if kind == CYCLIC:
        return v % (c.prime**c.power)
    if kind == QUASI:
        return v - math.floor(v)
    return v


def scalar_mul(k: int, x: Element) -> Element:
    if k == 0 or not x.coords:
        return Element._raw(x.group, ())
    out = []
    for c, v in x.coords:
        w = _reduce(c, k * v)
        if w:
            out.append((c, w))
    return Element._raw(x.group, tuple(out))


def add(x: Element, y: Element) -> Element:
    return x + y


def neg(x: Element) -> Element:
    return -x


def coordinate_order(c: Coord, v) -> int:
    """Order of the value ``v`` in coordinate ``c``; 0 means infinite."""
    if not v:
        return 1
    if c.kind in (FREE, RATIONAL):
        return 0
    if c.kind == QUASI:
        return v.denominator
    m = c.prime**c.power
    return m // math.gcd(v, m)


def order_of(x: Element) -> int:
    """Order of ``x``; 0 encodes infinite order."""
    out = 1
    for c, v in x.coords:
        o = coordinate_order(c, v)
        if o == 0:
            return 0
        out = math.lcm(out, o)
    return out


def in_torsion(x: Element, n: int) -> bool:
    """Whether ``n x = 0``; every element lies in G[0] = G."""
    if n == 0:
        return True
    return not scalar_mul(n, x).coords


# ---------------------------------------------------------------------------
# Descriptor-level operations


@lru_cache(maxsize=65536)
def torsion_subgroup(G: GroupDescriptor, n: int) -> GroupDescriptor:
    """Isomorphism type of G[n] = {x : n x = 0}."""
    if n < 0:
        n = -n
    if n == 0:
        return G
    cyc: dict[tuple[int, int], Cardinal] = {}
    for p, k in G.quasicyclic.items():
        v = valuation(n, p)
        if v:
            cyc[(p, v)] = card_add(cyc.get((p, v), 0), k)
    for (p, s), k in G.cyclic.items():
        t = min(s, valuation(n, p))
        if t:
            cyc[(p, t)] = card_add(cyc.get((p, t), 0), k)
    return GroupDescriptor(cyclic=cyc)


@lru_cache(maxsize=65536)
def multiply_group(G: GroupDescriptor, n: int) -> GroupDescriptor:
    """Isomorphism type of nG for ``n >= 1``."""
    if n == 0:
        raise DomainError("0G is the trivial group; multiples are defined for n >= 1")
    n = abs(n)
    cyc: dict[tuple[int, int], Cardinal] = {}
    for (p, s), k in G.cyclic.items():
        t = s - valuation(n, p)
        if t > 0:
            cyc[(p, t)] = card_add(cyc.get((p, t), 0), k)
    return GroupDescriptor(G.free_rank, G.rational_rank, dict(G.quasicyclic), cyc)


@lru_cache(maxsize=65536)
def exponent(G: GroupDescriptor) -> int:
    """Least n >= 1 with nG = 0, or 0 when G is unbounded."""
    if not G.is_bounded:
        return 0
    out = 1
    for p, s in G.cyclic:
        out = math.lcm(out, p**s)
    return out


@lru_cache(maxsize=65536)
def essential_order(G: GroupDescriptor) -> int:
    """Least n >= 1 with nG finite, or 0 when G is unbounded."""
    if not G.is_bounded:
        return 0
    top: dict[int, int] = {}
    for (p, s), k in G.cyclic.items():
        if k is OMEGA:
            top[p] = max(top.get(p, 0), s)
    return math.prod(p**s for p, s in top.items())


@lru_cache(maxsize=65536)
def canonical_torsion_order(G: GroupDescriptor, m: int) -> int:
    """The exponent of G[m]; G[m] equals G[canonical_torsion_order(G, m)]."""
    return exponent(torsion_subgroup(G, abs(m)))


def is_canonical_order(G: GroupDescriptor, n: int) -> bool:
    return n >= 0 and canonical_torsion_order(G, n) == n


@dataclass(frozen=True)
class IrreducibilityCertificate:
    irreducible: bool
    order: int
    # prime -> (leading power s, multiplicity of Z(p^s) in G[n])
    leading: dict = field(default_factory=dict)
    unbounded_witness: Family | None = None


def is_irreducible_torsion(G: GroupDescriptor, n: int) -> IrreducibilityCertificate:
    """Decide whether G[n] is an irreducible closed set, i.e. eo(G[n]) = n.

    The certificate lists the top Ulm-Kaplansky invariant of G[n] for each
    prime dividing ``n``; irreducibility holds exactly when all are OMEGA.
    """
    if not is_canonical_order(G, n):
        raise DomainError(f"{n} is not a canonical torsion order of {G!r}")
    if n == 0:
        witness = next(f for f, _ in G.families() if f.kind != CYCLIC)
        return IrreducibilityCertificate(True, 0, {}, witness)
    H = torsion_subgroup(G, n)
    leading = {}
    for p, e in (prime_powers(n) if n > 1 else ()):
        leading[p] = (e, H.cyclic.get((p, e), 0))
    ok = all(k is OMEGA for _, k in leading.values())
    assert ok == (essential_order(H) == n)
    return IrreducibilityCertificate(ok, n, leading, None)


def p_rank(G: GroupDescriptor, p: int) -> Cardinal:
    """Dimension of G[p] over the field with p elements."""
    out: Cardinal = G.quasicyclic.get(p, 0)
    for (q, _), k in G.cyclic.items():
        if q == p:
            out = card_add(out, k)
    return out


def is_almost_torsion_free(G: GroupDescriptor) -> bool:
    """Every G[p] is finite."""
    return all(p_rank(G, p) is not OMEGA for p in G.primes())


def is_cofinite_zariski(G: GroupDescriptor) -> bool:
    """Whether the Zariski topology of G is the cofinite topology."""
    e = exponent(G)
    return is_almost_torsion_free(G) or (e > 1 and isprime(e))


def unbounded_witness(G: GroupDescriptor) -> Family | None:
    for f, _ in G.families():
        if f.kind != CYCLIC:
            return f
    return None
