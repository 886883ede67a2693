"""Round sets: countably infinite S inside G[n] whose traces on the cosets
of G[d], for every proper divisor d of n, are finite.

Generators emit an injective sequence of elements.  Each generator can also
report exactly which of its terms fall into a given coset (``trace``), which
is what the set model needs to intersect atoms with closed sets.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .cosets import Coset
from .groups import (
    CYCLIC,
    FREE,
    OMEGA,
    QUASI,
    RATIONAL,
    Coord,
    DomainError,
    Element,
    Family,
    GroupDescriptor,
    canonical_torsion_order,
    divisors,
    essential_order,
    in_torsion,
    is_irreducible_torsion,
    order_of,
    prime_powers,
    scalar_mul,
    torsion_subgroup,
    valuation,
)

DEFAULT_PREFIX = 1000
DEFAULT_COUNT_BOUND = 8
DEFAULT_MAX_DIVISOR = 30  # divisors tried for 0-round candidates
ALL = None  # trace result: every term of the sequence lies in the coset


class RoundGenerator:
    """Base class.  Subclasses implement ``_compute(i)`` and ``trace``."""

    kind = "abstract"
    structural = False  # roundness follows from the construction
    exact_trace = True
    default_count_bound = DEFAULT_COUNT_BOUND
    label: str | None = None  # surface syntax, when the generator has one

    def __init__(self, group: GroupDescriptor, order_tag: int):
        self.group = group
        self.order_tag = order_tag
        self._cache: list[Element] = []

    def element(self, i: int) -> Element:
        while len(self._cache) <= i:
            self._cache.append(self._compute(len(self._cache)))
        return self._cache[i]

    def prefix(self, length: int) -> list[Element]:
        self.element(length - 1) if length > 0 else None
        return self._cache[:length]

    def __iter__(self) -> Iterator[Element]:
        i = 0
        while True:
            yield self.element(i)
            i += 1

    def _compute(self, i: int) -> Element:
        raise NotImplementedError

    def trace(self, E: Coset, limit: int = DEFAULT_PREFIX):
        """Indices i with element(i) in E, or ALL when every term is in E."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind, "order": self.order_tag}

    def same_as(self, other) -> bool:
        return self.describe() == other.describe() and self.group == other.group


class CanonicalBasis(RoundGenerator):
    """The i-th term is sum of ``value * e(family, start + step * i)`` over ``parts``.

    Each part sits in a family with infinitely many copies, so the terms
    are independent and generate a copy of Z(n)^(omega).
    """

    kind = "canonical"
    structural = True
    default_count_bound = 1

    def __init__(self, group, order_tag, parts, start=0, step=1):
        super().__init__(group, order_tag)
        if step < 1 or start < 0:
            raise DomainError("basis indices need start >= 0 and step >= 1")
        clean = []
        for family, value in parts:
            family = Family(*family)
            if group.multiplicity(family) is not OMEGA:
                raise DomainError(f"family {family} does not have infinitely many copies")
            clean.append((family, value))
        self.parts = tuple(clean)
        self.start, self.step = start, step

    def index_of(self, i: int) -> int:
        return self.start + self.step * i

    def _compute(self, i):
        j = self.index_of(i)
        return Element(self.group, [(Coord(f.kind, f.prime, f.power, j), v) for f, v in self.parts])

    def trace(self, E, limit=DEFAULT_PREFIX):
        w, n = E.anchor, E.order
        top = w.support_indices()
        hits = []
        i = 0
        while self.index_of(i) <= top:
            if self.element(i) in E:
                hits.append(i)
            i += 1
        # past the anchor's support the terms and the anchor are disjoint
        if in_torsion(self.element(i), n) and in_torsion(w, n):
            return ALL
        return hits

    def describe(self):
        return {
            "kind": self.kind,
            "order": self.order_tag,
            "parts": [[f.kind, f.prime, f.power, str(v)] for f, v in self.parts],
            "start": self.start,
            "step": self.step,
        }


class CyclicRay(RoundGenerator):
    """g, 2g, 3g, ... for an element g of infinite order."""

    kind = "ray"
    structural = True
    default_count_bound = 1

    def __init__(self, group, step: Element):
        super().__init__(group, 0)
        if order_of(step) != 0:
            raise DomainError("a ray needs an element of infinite order")
        self.step_element = step

    def _compute(self, i):
        return scalar_mul(i + 1, self.step_element)

    def trace(self, E, limit=DEFAULT_PREFIX):
        if E.order == 0:
            return ALL
        g = self.step_element
        c, gc = next((c, v) for c, v in g.coords if c.kind in (FREE, RATIONAL))
        k = Fraction(E.anchor.get(c)) / Fraction(gc)
        if k.denominator != 1 or k < 1:
            return []
        return [int(k) - 1] if self.element(int(k) - 1) in E else []

    def describe(self):
        return {"kind": self.kind, "order": 0, "step": _element_json(self.step_element)}


def escape_exponent(k: int, p: int) -> int:
    """Denominator exponent of the k-th escape term: strictly increasing, above v_p(k!)."""
    return valuation(math.factorial(k), p) + k


class FactorialEscape(RoundGenerator):
    """s_k = c/p^m(k) in one quasicyclic copy, chosen so that k! s_k != 0.

    The multiplier c only lowers each term's order by the fixed amount
    v_p(c), so the orders still grow without bound and every multiple of
    the sequence stays 0-round.
    """

    kind = "escape"
    structural = True

    def __init__(self, group, prime: int, index: int = 0, multiplier: int = 1):
        super().__init__(group, 0)
        mult = group.quasicyclic.get(prime, 0)
        if mult == 0 or (mult is not OMEGA and index >= mult):
            raise DomainError(f"no copy {index} of Z({prime}^inf) in the group")
        if multiplier == 0:
            raise DomainError("0 * S is a single point")
        self.prime, self.index, self.multiplier = prime, index, multiplier
        self.coord = Coord(QUASI, prime, 0, index)
        self._exp = [0]

    def exponent_at(self, i: int) -> int:
        # running sum avoids recomputing factorials
        while len(self._exp) <= i + 1:
            k = len(self._exp)
            self._exp.append(self._exp[-1] - (k - 1) + valuation(k, self.prime) + k)
        return self._exp[i + 1]

    def _compute(self, i):
        return Element(self.group, [(self.coord, Fraction(self.multiplier, self.prime ** self.exponent_at(i)))])

    def trace(self, E, limit=DEFAULT_PREFIX):
        n = E.order
        if n == 0:
            return ALL
        target = scalar_mul(n, E.anchor)
        if any(c != self.coord for c, _ in target.coords):
            return []
        r = valuation(Fraction(target.get(self.coord)).denominator, self.prime)
        v = valuation(n, self.prime) + valuation(abs(self.multiplier), self.prime)
        hits = []
        i = 0
        while self.exponent_at(i) <= v + r:
            if self.element(i) in E:
                hits.append(i)
            i += 1
        return hits

    def describe(self):
        out = {"kind": self.kind, "order": 0, "prime": self.prime, "index": self.index}
        if self.multiplier != 1:
            out["multiplier"] = self.multiplier
        return out


class UserSequence(RoundGenerator):
    """A sequence given by a function of the index; roundness is only sampled."""

    kind = "user"
    exact_trace = False

    def __init__(self, group, order_tag: int, func: Callable[[int], Element], name: str = "user"):
        super().__init__(group, order_tag)
        self.func = func
        self.name = name

    def _compute(self, i):
        x = self.func(i)
        if x.group != self.group:
            raise DomainError("user sequence produced an element of another group")
        return x

    def trace(self, E, limit=DEFAULT_PREFIX):
        return [i for i, x in enumerate(self.prefix(limit)) if x in E]

    def describe(self):
        return {"kind": self.kind, "order": self.order_tag, "name": self.name}


def scale_generator(gen: RoundGenerator, k: int) -> RoundGenerator:
    """The sequence k * s_i.

    Scaling a basis, a ray or an escape sequence gives one of the same
    kind; anything else becomes an uncertified user sequence.
    """
    if k == 0:
        raise DomainError("0 * S is a single point")
    G = gen.group
    if isinstance(gen, CanonicalBasis):
        parts = []
        for family, value in gen.parts:
            probe = Coord(family.kind, family.prime, family.power, 0)
            scaled = Element(G, [(probe, k * value)]).get(probe)
            if scaled:
                parts.append((family, scaled))
        if not parts:
            raise DomainError(f"{k} * S collapses to a single point")
        order = canonical_torsion_order(G, gen.order_tag // math.gcd(gen.order_tag, k))
        scaled = CanonicalBasis(G, order, parts, gen.start, gen.step)
    elif isinstance(gen, CyclicRay):
        scaled = CyclicRay(G, scalar_mul(k, gen.step_element))
    elif isinstance(gen, FactorialEscape):
        scaled = FactorialEscape(G, gen.prime, gen.index, k * gen.multiplier)
    else:
        n = gen.order_tag
        order = canonical_torsion_order(G, n // math.gcd(n, k)) if n else 0
        name = getattr(gen, "name", gen.kind)
        scaled = UserSequence(G, order, lambda i: scalar_mul(k, gen.element(i)), f"{k}*{name}")
    if gen.label is not None:
        scaled.label = f"{k}*{gen.label}"
    return scaled


def _element_json(x: Element):
    return [[c.kind, c.prime, c.power, c.index, str(v)] for c, v in x.coords]


# ---------------------------------------------------------------------------
# Certification


@dataclass
class RoundCertificate:
    ok: bool
    order: int
    length: int
    bound: int
    structural: bool
    max_counts: dict = field(default_factory=dict)
    refutation: dict | None = None

    def as_dict(self):
        return {
            "ok": self.ok,
            "order": self.order,
            "prefix_length": self.length,
            "count_bound": self.bound,
            "structural": self.structural,
            "max_counts": {str(d): c for d, c in self.max_counts.items()},
            "refutation": self.refutation,
        }


def proper_divisors(n: int, max_divisor: int = DEFAULT_MAX_DIVISOR) -> list[int]:
    """Proper divisors of n; for n = 0 every d >= 1 qualifies, so take 1..max_divisor."""
    if n == 0:
        return list(range(1, max_divisor + 1))
    return [d for d in divisors(n) if d != n]


def certify_round(
    gen: RoundGenerator,
    length: int = DEFAULT_PREFIX,
    count_bound: int | None = None,
    max_divisor: int = DEFAULT_MAX_DIVISOR,
) -> RoundCertificate:
    """Count collisions of d x over the first ``length`` terms for each proper divisor d."""
    if length < 1:
        raise DomainError("prefix length must be at least 1")
    n = gen.order_tag
    if n == 1:
        raise DomainError("G[1] is a single point, so nothing is 1-round")
    bound = gen.default_count_bound if count_bound is None else count_bound
    terms = gen.prefix(length)
    for i, x in enumerate(terms):
        if not in_torsion(x, n):
            raise DomainError(f"term {i} = {x!r} is not in G[{n}]")
    cert = RoundCertificate(True, n, length, bound, gen.structural)
    for d in proper_divisors(n, max_divisor):
        where: dict[Element, list[int]] = {}
        for i, x in enumerate(terms):
            where.setdefault(scalar_mul(d, x), []).append(i)
        worst_value, worst = max(where.items(), key=lambda kv: len(kv[1]))
        cert.max_counts[d] = len(worst)
        if len(worst) > bound and cert.ok:
            cert.ok = False
            cert.refutation = {"d": d, "value": _element_json(worst_value), "indices": worst[: bound + 1]}
    return cert


# ---------------------------------------------------------------------------
# Construction


def make_round(G: GroupDescriptor, n: int) -> RoundGenerator:
    """A standard n-round set of G; exists exactly when eo(G[n]) = n and n != 1."""
    gen = _standard_round(G, n)
    gen.label = f"round({n})"
    return gen


def _standard_round(G: GroupDescriptor, n: int) -> RoundGenerator:
    if n < 0 or canonical_torsion_order(G, n) != n:
        raise DomainError(f"{n} is not a canonical torsion order of the group")
    if n == 1:
        raise DomainError("there are no 1-round sets")
    cert = is_irreducible_torsion(G, n)
    if not cert.irreducible:
        bad = {p: lead for p, lead in cert.leading.items() if lead[1] is not OMEGA}
        p, (s, k) = next(iter(bad.items()))
        raise DomainError(
            f"eo(G[{n}]) = {essential_order(torsion_subgroup(G, n))} != {n}: "
            f"Z({p}^{s}) occurs only {k} times in G[{n}]"
        )
    if n == 0:
        if G.free_rank:
            return CyclicRay(G, Element(G, [(Coord(FREE, 0, 0, 0), 1)]))
        if G.rational_rank:
            return CyclicRay(G, Element(G, [(Coord(RATIONAL, 0, 0, 0), 1)]))
        p = next(iter(G.quasicyclic))
        return FactorialEscape(G, p)
    parts = []
    for p, e in prime_powers(n):
        options = sorted(s for (q, s), k in G.cyclic.items() if q == p and s >= e and k is OMEGA)
        if options:
            s = options[0]
            parts.append((Family(CYCLIC, p, s), p ** (s - e)))
        else:
            parts.append((Family(QUASI, p), Fraction(1, p**e)))
    return CanonicalBasis(G, n, parts)


# ---------------------------------------------------------------------------
# Splitting a round set into two pieces whose translates meet finitely


class _SubgroupEnumeration:
    """Breadth-first listing h_0 = 0, h_1, ... of the subgroup generated by a sequence.

    Processing the k-th listed element adds +/- x_j for every j <= k, and
    x_k itself enters when k is reached, so every finite combination shows
    up eventually and nothing repeats.
    """

    def __init__(self, gen: RoundGenerator):
        self.gen = gen
        zero = gen.group.zero()
        self.items = [zero]
        self.seen = {zero}
        self.ptr = 0

    def _push(self, h):
        if h not in self.seen:
            self.seen.add(h)
            self.items.append(h)

    def get(self, k: int) -> Element:
        while len(self.items) <= k:
            x = self.gen.element(self.ptr)
            self._push(x)
            self._push(-x)
            h = self.items[self.ptr]
            for j in range(self.ptr + 1):
                xj = self.gen.element(j)
                self._push(h + xj)
                self._push(h - xj)
            self.ptr += 1
        return self.items[k]


class _GreedySplit:
    """Picks x_0, x_1, ... from the parent, x_n avoiding {x_i : i < n} + (F_n or -F_n).

    F_n = {h_0, ..., h_n} is the start of the subgroup listing.  Even picks
    form one half and odd picks the other; a translate of one half then
    meets the other half in finitely many points.
    """

    def __init__(self, parent: RoundGenerator, scan_budget: int = 100_000):
        self.parent = parent
        self.listing = _SubgroupEnumeration(parent)
        self.scan_budget = scan_budget
        self.picked: list[int] = []
        self.values: list[Element] = []
        self.forbidden: set[Element] = set()  # F_n together with -F_n
        self.support: set[Coord] = set()
        self.by_coordinate: dict = {}

    def _grow_f(self, n):
        h = self.listing.get(n)
        self.forbidden.add(h)
        self.forbidden.add(-h)
        self.support.update(c for c, _ in h.coords)

    def _allowed(self, y: Element) -> bool:
        outside = next(((c, v) for c, v in y.coords if c not in self.support), None)
        if outside is not None:
            # y - x_i can only lie in +/-F_n when x_i agrees with y off the support of F_n
            candidates = self.by_coordinate.get(outside, ())
        else:
            candidates = range(len(self.values))
        return all((y - self.values[i]) not in self.forbidden for i in candidates)

    def pick(self, n: int) -> int:
        while len(self.picked) <= n:
            k = len(self.picked)
            self._grow_f(k)
            j = self.picked[-1] + 1 if self.picked else 0
            for _ in range(self.scan_budget):
                y = self.parent.element(j)
                if self._allowed(y):
                    break
                j += 1
            else:
                raise DomainError("greedy split exhausted its scan budget")
            self.picked.append(j)
            self.values.append(y)
            for cv in y.coords:
                self.by_coordinate.setdefault(cv, []).append(k)
        return self.picked[n]


class TrimmedSequence(RoundGenerator):
    """Every other pick of a greedy split of a parent round generator."""

    kind = "trimmed"

    def __init__(self, split: _GreedySplit, parity: int):
        parent = split.parent
        super().__init__(parent.group, parent.order_tag)
        self.split, self.parity = split, parity
        self.structural = parent.structural
        self.exact_trace = parent.exact_trace
        self.default_count_bound = parent.default_count_bound

    def parent_index(self, i: int) -> int:
        return self.split.pick(2 * i + self.parity)

    def _compute(self, i):
        return self.split.parent.element(self.parent_index(i))

    def trace(self, E, limit=DEFAULT_PREFIX):
        hits = self.split.parent.trace(E, limit)
        if hits is ALL:
            return ALL
        if not hits:
            return []
        wanted, top, out = set(hits), max(hits), []
        i = 0
        while True:
            j = self.parent_index(i)
            if j > top:
                return out
            if j in wanted:
                out.append(i)
            i += 1

    def describe(self):
        return {"kind": self.kind, "order": self.order_tag, "parity": self.parity, "parent": self.split.parent.describe()}


@dataclass
class SplitCertificate:
    length: int
    max_translate_overlap: int  # max over a of #{(i, j) : y0_i - y1_j = a}
    disjoint: bool

    def as_dict(self):
        return {
            "prefix_length": self.length,
            "max_translate_overlap": self.max_translate_overlap,
            "disjoint": self.disjoint,
        }


def split_trim(gen: RoundGenerator, length: int = 200):
    """Two disjoint sub-sequences Y0, Y1 with (a0 + Y0) meeting (a1 + Y1) finitely for all a0, a1."""
    split = _GreedySplit(gen)
    y0, y1 = TrimmedSequence(split, 0), TrimmedSequence(split, 1)
    if gen.label is not None:
        y0.label, y1.label = f"split({gen.label}, 0)", f"split({gen.label}, 1)"
    p0, p1 = y0.prefix(length), y1.prefix(length)
    overlap = Counter(a - b for a in p0 for b in p1)
    cert = SplitCertificate(length, max(overlap.values()), not (set(p0) & set(p1)))
    return y0, y1, cert
