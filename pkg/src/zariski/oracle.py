"""Ground truth by brute force on explicit finite groups.

Everything true is computed here from element tables of
Z(n1) + ... + Z(nk), with tuples of residues as elements.  The symbolic
side is only called through its public functions and its answers are
expanded back into element sets for comparison, so agreement between the
two is meaningful.
"""
from __future__ import annotations

import itertools
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from sympy import divisors as sympy_divisors
from sympy import factorint

from . import cosets as sym
from .groups import OMEGA, Coord, Element, GroupDescriptor


# ---------------------------------------------------------------------------
# Explicit finite groups


class FiniteGroupInstance:
    """Z(n1) + ... + Z(nk) with all elements listed."""

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(int(n) for n in moduli if n != 1)
        if any(n < 1 for n in self.moduli):
            raise ValueError(f"moduli must be positive, got {moduli}")
        self.order = math.prod(self.moduli)
        self.exponent = math.lcm(*self.moduli) if self.moduli else 1
        self.zero = tuple(0 for _ in self.moduli)
        self._torsion: dict[int, frozenset] = {}
        self._mul: dict[int, dict] = {}
        self._add_table = None

    @property
    def elements(self) -> list:
        if not hasattr(self, "_elements"):
            self._elements = list(itertools.product(*(range(n) for n in self.moduli)))
        return self._elements

    def __repr__(self):
        inner = " + ".join(f"Z({n})" for n in self.moduli) or "0"
        return f"FiniteGroupInstance({inner})"

    def add(self, x, y):
        if self._add_table is not None:
            return self._add_table[x, y]
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def tabulate(self):
        """Precompute the addition table (worth it for repeated pair checks)."""
        if self._add_table is None and self.order <= 256:
            self._add_table = {
                (x, y): tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))
                for x in self.elements
                for y in self.elements
            }
        return self

    def mul_map(self, k: int) -> dict:
        if k not in self._mul:
            self._mul[k] = {x: self.mul(k, x) for x in self.elements}
        return self._mul[k]

    def sub(self, x, y):
        return tuple((a - b) % n for a, b, n in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.moduli))

    def mul(self, k, x):
        return tuple((k * a) % n for a, n in zip(x, self.moduli))

    def torsion(self, n: int) -> frozenset:
        """{x : n x = 0}, straight from the element table."""
        if n not in self._torsion:
            m = self.mul_map(n)
            self._torsion[n] = frozenset(x for x in self.elements if m[x] == self.zero)
        return self._torsion[n]

    def torsion_catalog(self) -> dict[int, frozenset]:
        """One entry per distinct subgroup G[d], keyed by the least such d."""
        seen = {}
        for d in range(1, self.exponent + 1):
            if self.exponent % d == 0:
                H = self.torsion(d)
                if H not in seen.values():
                    seen[d] = H
        return seen

    def torsion_size(self, n: int) -> int:
        """|{x : n x = 0}|, counted per cyclic factor instead of enumerated."""
        return math.prod(math.gcd(n, m) for m in self.moduli)

    def shift(self, a, H) -> frozenset:
        return frozenset(self.add(a, h) for h in H)

    def elementary_sets(self) -> list[tuple[tuple, int, frozenset]]:
        """Every coset of every G[d], once, as (anchor, d, elements)."""
        out = []
        for d, H in self.torsion_catalog().items():
            done = set()
            for a in self.elements:
                if a in done:
                    continue
                S = self.shift(a, H)
                done |= S
                out.append((a, d, S))
        return out

    # bridge to the symbolic descriptor -------------------------------------

    def descriptor(self) -> GroupDescriptor:
        cyc: dict = {}
        for n in self.moduli:
            for p, e in factorint(n).items():
                cyc[(p, e)] = cyc.get((p, e), 0) + 1
        return GroupDescriptor(cyclic=cyc)

    def _layout(self):
        if not hasattr(self, "_layout_cache"):
            counters: dict = {}
            layout = []
            for i, n in enumerate(self.moduli):
                for p, e in sorted(factorint(n).items()):
                    j = counters.get((p, e), 0)
                    counters[(p, e)] = j + 1
                    layout.append((i, p**e, Coord("C", p, e, j)))
            self._layout_cache = layout
        return self._layout_cache

    def to_element(self, x) -> Element:
        G = self.descriptor() if not hasattr(self, "_desc") else self._desc
        self._desc = G
        return Element(G, [(c, x[i] % q) for i, q, c in self._layout()])

    def from_element(self, e: Element) -> tuple:
        vals = dict(e.coords)
        out = []
        for i, n in enumerate(self.moduli):
            residue, modulus = 0, 1
            for j, q, c in self._layout():
                if j != i:
                    continue
                v = vals.get(c, 0)
                # combine residue mod modulus with v mod q
                t = ((v - residue) * pow(modulus, -1, q)) % q if q > 1 else 0
                residue += modulus * t
                modulus *= q
            out.append(residue % n)
        return tuple(out)


def groups_up_to(cap: int) -> list[FiniteGroupInstance]:
    """One instance per isomorphism type of finite abelian group of order <= cap."""
    found = [FiniteGroupInstance(())]

    def extend(prefix, product):
        last = prefix[-1] if prefix else 1
        start = last if prefix else 2
        for n in range(start, cap // product + 1):
            if prefix and n % last:
                continue
            found.append(FiniteGroupInstance(prefix + (n,)))
            extend(prefix + (n,), product * n)

    extend((), 1)
    return found


@lru_cache(maxsize=64)
def truncate(G: GroupDescriptor, copies: int) -> FiniteGroupInstance:
    """Replace every OMEGA multiplicity of a bounded descriptor by ``copies``."""
    if G.free_rank or G.rational_rank or G.quasicyclic:
        raise ValueError("only bounded descriptors have finite truncations")
    moduli = []
    for (p, s), k in G.cyclic.items():
        moduli += [p**s] * (copies if k is OMEGA else k)
    return FiniteGroupInstance(moduli)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class OracleReport:
    suite: str
    checks: int = 0
    failures: int = 0
    first_failure: str | None = None
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, message: Callable[[], str]):
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = message()

    def merge(self, other: "OracleReport"):
        self.checks += other.checks
        self.failures += other.failures
        if self.first_failure is None:
            self.first_failure = other.first_failure

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# Coset lemma suite


def check_coset_lemmas(inst: FiniteGroupInstance) -> OracleReport:
    """Compare every symbolic coset operation with set enumeration on ``inst``."""
    start = time.perf_counter()
    report = OracleReport("coset")
    report.details["group"] = repr(inst)
    G = inst.descriptor()
    inst._desc = G
    inst.tabulate()
    catalog = inst.elementary_sets()
    symbolic = [sym.coset(inst.to_element(a), d) for a, d, _ in catalog]
    truth = {s: S for s, (_, _, S) in zip(symbolic, catalog)}
    report.record(
        len(truth) == len(catalog),
        lambda: f"{inst}: distinct cosets share a canonical form",
    )

    def expand(E) -> frozenset:
        if E is sym.EMPTY:
            return frozenset()
        if E in truth:
            return truth[E]
        # canonical form unknown to the catalog: expand independently
        return inst.shift(inst.from_element(E.anchor), inst.torsion(E.order if E.order else inst.exponent))

    sets = [S for _, _, S in catalog]
    for E in symbolic:
        report.record(expand(E) in truth.values(), lambda E=E: f"{inst}: {E} is not an elementary set")

    for i, E1 in enumerate(symbolic):
        S1 = sets[i]
        neg_truth = frozenset(inst.neg(x) for x in S1)
        report.record(expand(sym.negate(E1)) == neg_truth, lambda E1=E1: f"{inst}: negate({E1})")
        for a in inst.elements:
            got = expand(sym.translate(inst.to_element(a), E1))
            report.record(got == inst.shift(a, S1), lambda a=a, E1=E1: f"{inst}: translate({a}, {E1})")
        for k in range(-2, inst.exponent + 2):
            mk = inst.mul_map(k)
            want = frozenset(x for x in inst.elements if mk[x] in S1)
            got = expand(sym.preimage_mul(k, E1))
            report.record(got == want, lambda k=k, E1=E1: f"{inst}: preimage_mul({k}, {E1})")
        for j, E2 in enumerate(symbolic):
            S2 = sets[j]
            report.record(
                sym.subset(E1, E2) == (S1 <= S2), lambda E1=E1, E2=E2: f"{inst}: subset({E1}, {E2})"
            )
            report.record(
                sym.equals(E1, E2) == (S1 == S2), lambda E1=E1, E2=E2: f"{inst}: equals({E1}, {E2})"
            )
            report.record(
                expand(sym.intersect(E1, E2)) == (S1 & S2),
                lambda E1=E1, E2=E2: f"{inst}: intersect({E1}, {E2})",
            )
            if j >= i:
                want = frozenset(inst.add(x, y) for x in S1 for y in S2)
                report.record(
                    expand(sym.minkowski_sum(E1, E2)) == want,
                    lambda E1=E1, E2=E2: f"{inst}: minkowski_sum({E1}, {E2})",
                )
    # empty set rules
    e0 = symbolic[0] if symbolic else None
    if e0 is not None:
        report.record(sym.intersect(sym.EMPTY, e0) is sym.EMPTY, lambda: "EMPTY meet E")
        report.record(sym.subset(sym.EMPTY, e0) and not sym.subset(e0, sym.EMPTY), lambda: "EMPTY subset")
    report.seconds = time.perf_counter() - start
    return report


def _coset_job(moduli):
    return check_coset_lemmas(FiniteGroupInstance(moduli))


def run_coset_suite(cap: int = 64, workers: int | None = None) -> OracleReport:
    """All groups of order <= cap; reports are merged in a fixed order."""
    start = time.perf_counter()
    total = OracleReport("coset")
    jobs = [inst.moduli for inst in groups_up_to(cap)]
    # largest groups first so the pool stays busy
    jobs.sort(key=lambda m: -math.prod(m))
    workers = workers if workers is not None else min(8, os.cpu_count() or 1)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_coset_job, jobs))
    else:
        reports = [_coset_job(m) for m in jobs]
    for r in sorted(reports, key=lambda r: r.details["group"]):
        total.merge(r)
    total.details = {"cap": cap, "groups": len(jobs), "workers": workers}
    total.seconds = time.perf_counter() - start
    return total


# ---------------------------------------------------------------------------
# Truncations of torsion subgroups and essential orders by brute force


def _family_levels(G: GroupDescriptor, n: int) -> list[tuple[int, int, object]]:
    """(p, level, multiplicity) for the torsion part of G[n], n >= 1, worked out from scratch."""
    out = []
    for (p, s), k in G.cyclic.items():
        level = min(s, _vp(n, p))
        if level:
            out.append((p, level, k))
    for p, k in G.quasicyclic.items():
        level = _vp(n, p)
        if level:
            out.append((p, level, k))
    return out


def _vp(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def torsion_instance(G: GroupDescriptor, n: int, copies: int) -> FiniteGroupInstance:
    """G[n] with every infinite multiplicity cut down to ``copies``."""
    moduli = []
    for p, level, k in _family_levels(G, n):
        moduli += [p**level] * (copies if k is OMEGA else k)
    return FiniteGroupInstance(moduli)


@lru_cache(maxsize=None)
def finite_index_orders(G: GroupDescriptor, n: int) -> list[int]:
    """Divisors d of n with [G[n] : G[d]] finite.

    The index is finite exactly when it does not grow as more copies of
    each infinite family are kept, so compare two and three copies.
    """
    small, big = torsion_instance(G, n, 2), torsion_instance(G, n, 3)
    return [
        d
        for d in sympy_divisors(n)
        if small.order * big.torsion_size(d) == big.order * small.torsion_size(d)
    ]


def brute_essential_order(G: GroupDescriptor, n: int) -> int:
    """eo(G[n]) for n >= 1: the least divisor d of n with G[d] of finite index in G[n]."""
    return min(finite_index_orders(G, n))


def brute_exponent(G: GroupDescriptor, n: int) -> int:
    levels = _family_levels(G, n)
    return math.lcm(1, *(p**level for p, level, _ in levels))


# ---------------------------------------------------------------------------
# Decomposition suite


DECOMPOSITION_GROUPS = ("Z(6)^w", "Z(4)^w", "Z(2)^w + Z(4)", "Z(4)^w + Z(3)")


def _bounded_descriptor(text: str) -> GroupDescriptor:
    cyc: dict = {}
    for term in text.split("+"):
        term = term.strip()
        base, _, mult = term.partition("^")
        modulus = int(base[2:-1])
        k = OMEGA if mult == "w" else int(mult or 1)
        for p, e in factorint(modulus).items():
            prev = cyc.get((p, e), 0)
            cyc[(p, e)] = OMEGA if OMEGA in (k, prev) else prev + k
    return GroupDescriptor(cyclic=cyc)


def _window_element(G: GroupDescriptor, rng: random.Random, copies: int = 2) -> Element:
    coords = []
    for (p, s), k in sorted(G.cyclic.items()):
        for i in range(copies if k is OMEGA else k):
            v = rng.randrange(p**s)
            if v:
                coords.append((Coord("C", p, s, i), v))
    return Element(G, coords)


def _expand(inst: FiniteGroupInstance, E) -> frozenset:
    """The elements of a symbolic coset inside a truncation of its group."""
    local = inst.descriptor()
    anchor = inst.from_element(Element(local, E.anchor.coords))
    return inst.shift(anchor, inst.torsion(E.order or inst.exponent))


def brute_components(G: GroupDescriptor, parts: Sequence[tuple[Element, int]]) -> set[frozenset]:
    """Maximal irreducible pieces of a union of cosets, inside the 3-copy truncation.

    A coset a + G[n] is irreducible when no G[d] of finite index is
    strictly smaller, so it splits into cosets of the intersection of all
    finite-index G[d].
    """
    big = truncate(G, 3).tabulate()
    local = big.descriptor()
    pieces = set()
    for anchor, n in parts:
        n = n or big.exponent
        H = big.torsion(n)
        core = H
        for d in finite_index_orders(G, n):
            core = core & big.torsion(d)
        a = big.from_element(Element(local, anchor.coords))
        coset_elements = big.shift(a, H)
        done = set()
        for x in sorted(coset_elements):
            if x not in done:
                piece = big.shift(x, core)
                done |= piece
                pieces.add(piece)
    return {P for P in pieces if not any(P < Q for Q in pieces)}


def check_decomposition(cases: int = 280, seed: int = 0, groups: Sequence[str] = DECOMPOSITION_GROUPS) -> OracleReport:
    from .closed import canonicalize, irreducible_components

    start = time.perf_counter()
    report = OracleReport("decomp")
    rng = random.Random(seed)
    descriptors = [_bounded_descriptor(g) for g in groups]
    per_group: dict = {g: 0 for g in groups}
    for case in range(cases):
        name = groups[case % len(groups)]
        G = descriptors[case % len(groups)]
        e = math.lcm(*(p**s for p, s in G.cyclic))
        parts = [(_window_element(G, rng), rng.choice(sympy_divisors(e))) for _ in range(rng.randint(1, 4))]
        A = canonicalize([sym.coset(a, n) for a, n in parts], G)
        big = truncate(G, 3).tabulate()
        symbolic = {_expand(big, C) for C in irreducible_components(A)}
        truth = brute_components(G, parts)
        per_group[name] += 1
        report.record(
            symbolic == truth,
            lambda name=name, parts=parts: f"{name}: components of {[(a, n) for a, n in parts]} differ",
        )
    report.details = {"cases": cases, "seed": seed, "per_group": per_group, "truncations": [2, 3]}
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Round prefixes, counted without the symbolic arithmetic


def _raw_multiple(d: int, x: Element) -> tuple:
    out = []
    for c, v in x.coords:
        if c.kind == "C":
            w = (d * v) % (c.prime**c.power)
        elif c.kind == "P":
            w = (d * Fraction(v)) % 1
        else:
            w = d * Fraction(v)
        if w:
            out.append((tuple(c), w))
    return tuple(sorted(out))


def check_round_prefix(gen, length: int = 1000, bound: int = 1, max_divisor: int = 30) -> OracleReport:
    """Counts |{i < L : d x_i = g}| for proper divisors d of the order tag."""
    start = time.perf_counter()
    report = OracleReport("round")
    n = gen.order_tag
    terms = gen.prefix(length)
    ds = range(1, max_divisor + 1) if n == 0 else [d for d in sympy_divisors(n) if d != n]
    maxima = {}
    for d in ds:
        counts: dict = {}
        for x in terms:
            key = _raw_multiple(d, x)
            counts[key] = counts.get(key, 0) + 1
        maxima[d] = max(counts.values())
        report.record(maxima[d] <= bound, lambda d=d: f"d={d}: {maxima[d]} terms share a multiple")
    if n:
        report.record(
            all(not _raw_multiple(n, x) for x in terms), lambda: f"some term is outside G[{n}]"
        )
    report.details = {"order": n, "prefix_length": length, "bound": bound, "max_counts": {str(k): v for k, v in maxima.items()}}
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Descending chains of elementary sets


def check_chain_dcc(G: GroupDescriptor, trials: int = 500, seed: int = 0, copies: int = 2) -> OracleReport:
    """Random strict descending chains of cosets never exceed 1 + (number of divisors of the exponent)."""
    start = time.perf_counter()
    report = OracleReport("chain")
    inst = truncate(G, copies).tabulate()
    sets = [S for _, _, S in inst.elementary_sets()]
    below = {i: [j for j, T in enumerate(sets) if T < S] for i, S in enumerate(sets)}
    bound = 1 + len(sympy_divisors(inst.exponent))
    rng = random.Random(seed)
    longest_random = 0
    for _ in range(trials):
        i = rng.randrange(len(sets))
        length = 1
        while below[i]:
            i = rng.choice(below[i])
            length += 1
        longest_random = max(longest_random, length)
        report.record(length <= bound, lambda length=length: f"chain of length {length} beats the bound {bound}")
    # exact longest chain, by dynamic programming over set sizes
    best: dict[int, int] = {}
    for i in sorted(range(len(sets)), key=lambda i: len(sets[i])):
        best[i] = 1 + max((best[j] for j in below[i]), default=0)
    longest = max(best.values())
    report.record(longest <= bound, lambda: f"longest chain {longest} beats the bound {bound}")
    report.details = {
        "group": repr(inst),
        "trials": trials,
        "seed": seed,
        "bound": bound,
        "longest_random_chain": longest_random,
        "longest_chain": longest,
    }
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Closure laws


LAW_GROUPS = ("Z(4)^w", "Z(6)^w", "Z(2)^w + Z(4)", "Z(4)^w + Z(3)")


def _random_closed(G: GroupDescriptor, rng: random.Random):
    from .closed import canonicalize

    e = math.lcm(*(p**s for p, s in G.cyclic))
    parts = [sym.coset(_window_element(G, rng), rng.choice(sympy_divisors(e))) for _ in range(rng.randint(1, 3))]
    return canonicalize(parts, G)


def _random_described(G: GroupDescriptor, rng: random.Random):
    from . import sets
    from .rounds import make_round

    atoms = []
    e = math.lcm(*(p**s for p, s in G.cyclic))
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["finite", "coset", "round"])
        if kind == "finite":
            atoms.append(sets.FiniteAtom(tuple(_window_element(G, rng) for _ in range(rng.randint(1, 3)))))
        elif kind == "coset":
            atoms.append(sets.CosetAtom(sym.coset(_window_element(G, rng), rng.choice(sympy_divisors(e)))))
        else:
            for n in rng.sample(sympy_divisors(e), len(sympy_divisors(e))):
                try:
                    gen = make_round(G, n)
                except ValueError:
                    continue
                atoms.append(sets.RoundAtom(_window_element(G, rng), gen))
                break
    return sets.DescribedSet(G, tuple(atoms))


def check_closure_laws(cases: int = 100, seed: int = 0, groups: Sequence[str] = LAW_GROUPS) -> OracleReport:
    """Translation equivariance, finite sums, and sums of closed sets against enumeration."""
    from . import closed, sets

    start = time.perf_counter()
    report = OracleReport("laws")
    rng = random.Random(seed)
    for case in range(cases):
        G = _bounded_descriptor(groups[case % len(groups)])
        X = _random_described(G, rng)
        a = _window_element(G, rng)
        lhs = sets.closure_set(sets.translate_set(a, X))
        rhs = closed.translate(a, sets.closure_set(X))
        report.record(closed.same_set(lhs, rhs), lambda X=X, a=a: f"closure({a} + {X}) != {a} + closure")
        F = [_window_element(G, rng) for _ in range(rng.randint(1, 3))]
        lhs = sets.closure_set(sets.add_finite(F, X))
        rhs = closed.canonicalize([sym.coset(f, 1) for f in F], G)
        rhs = closed.minkowski_sum(rhs, sets.closure_set(X))
        report.record(closed.same_set(lhs, rhs), lambda X=X, F=F: f"closure({F} + {X}) != F + closure")
        # sums of closed sets, compared element by element in a truncation
        A, B = _random_closed(G, rng), _random_closed(G, rng)
        inst = truncate(G, 2).tabulate()
        ea = frozenset().union(*(_expand(inst, C) for C in A.parts))
        eb = frozenset().union(*(_expand(inst, C) for C in B.parts))
        want = frozenset(inst.add(x, y) for x in ea for y in eb)
        got = frozenset().union(*(_expand(inst, C) for C in closed.minkowski_sum(A, B).parts))
        report.record(got == want, lambda A=A, B=B: f"sum of {A} and {B} differs from enumeration")
    report.details = {"cases": cases, "seed": seed, "groups": list(groups)}
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Irreducibility and dimension


def random_bounded_descriptor(rng: random.Random) -> GroupDescriptor:
    cyc, quasi = {}, {}
    for _ in range(rng.randint(1, 3)):
        p, s = rng.choice([2, 3, 5]), rng.randint(1, 3)
        cyc[(p, s)] = rng.choice([1, 2, OMEGA])
    if rng.random() < 0.3:
        quasi[rng.choice([2, 3])] = rng.choice([1, OMEGA])
    return GroupDescriptor(free_rank=rng.choice([0, 0, 1]), quasicyclic=quasi, cyclic=cyc)


def check_irreducibility(cases: int = 50, seed: int = 0) -> OracleReport:
    """is_irreducible_torsion and make_round against a divisor-minimality search."""
    from .groups import essential_order, is_irreducible_torsion, torsion_subgroup
    from .rounds import make_round

    start = time.perf_counter()
    report = OracleReport("irreducible")
    rng = random.Random(seed)
    done, rows = 0, []
    while done < cases:
        G = random_bounded_descriptor(rng)
        top = math.lcm(*(p**s for p, s in G.cyclic), *(p**3 for p in G.quasicyclic))
        n = rng.choice(sympy_divisors(top))
        if brute_exponent(G, n) != n or n == 1:
            continue  # only canonical orders above 1 are asked about
        done += 1
        eo = brute_essential_order(G, n)
        sym_eo = essential_order(torsion_subgroup(G, n))
        verdict = is_irreducible_torsion(G, n).irreducible
        try:
            make_round(G, n)
            made = True
        except ValueError:
            made = False
        rows.append({"group": repr(G), "n": n, "eo": eo, "irreducible": eo == n})
        report.record(sym_eo == eo, lambda G=G, n=n: f"eo(G[{n}]) of {G}: {sym_eo} != {eo}")
        report.record(verdict == (eo == n), lambda G=G, n=n: f"irreducibility of G[{n}] in {G}")
        report.record(made == (eo == n), lambda G=G, n=n: f"make_round({G}, {n}) existence")
    report.details = {"cases": cases, "seed": seed, "irreducible": sum(r["irreducible"] for r in rows), "rows": rows}
    report.seconds = time.perf_counter() - start
    return report


def chain_dimension(G: GroupDescriptor) -> int:
    """Longest chain of irreducible torsion subgroups, found by search over the divisor lattice.

    Works for groups whose torsion is bounded.  A free or rational part
    adds G itself on top of every chain.
    """
    if any(k for k in G.quasicyclic.values()):
        raise ValueError("the chain search needs bounded torsion")
    top = math.lcm(1, *(p**s for p, s in G.cyclic))
    # one representative order per distinct subgroup G[d], detected by its truncations
    seen, orders = set(), []
    for d in sympy_divisors(top):
        key = (torsion_instance(G, d, 2).moduli, torsion_instance(G, d, 3).moduli)
        if key not in seen:
            seen.add(key)
            orders.append(d)
    irreducible = [d for d in orders if brute_essential_order(G, d) == brute_exponent(G, d)]

    def contained(d, m):
        return all(_vp(m, p) >= lvl for p, lvl, _ in _family_levels(G, d))

    best: dict[int, int] = {}
    for d in sorted(irreducible, key=lambda d: torsion_instance(G, d, 3).order):
        best[d] = max((best[m] + 1 for m in best if m != d and contained(m, d)), default=0)
    height = max(best.values())
    return height + 1 if (G.free_rank or G.rational_rank) else height


# ---------------------------------------------------------------------------
# Suites and report files


SUITES = ("coset", "decomp", "round", "chain", "laws", "irreducible")


def run_suite(name: str, cap: int = 64, seed: int = 0) -> list[OracleReport]:
    from .groups import cyclic_group, free_group
    from .rounds import make_round

    if name == "coset":
        return [run_coset_suite(cap)]
    if name == "decomp":
        return [check_decomposition(seed=seed)]
    if name == "round":
        out = []
        for G, n in [(free_group(1), 0), (cyclic_group(2, OMEGA), 2), (cyclic_group(3, OMEGA), 3),
                     (cyclic_group(4, OMEGA), 4), (cyclic_group(6, OMEGA), 6)]:
            r = check_round_prefix(make_round(G, n), 1000)
            r.suite = f"round[{n}]"
            out.append(r)
        return out
    if name == "chain":
        return [check_chain_dcc(cyclic_group(12), seed=seed), check_chain_dcc(cyclic_group(4, OMEGA), seed=seed)]
    if name == "laws":
        return [check_closure_laws(seed=seed)]
    if name == "irreducible":
        return [check_irreducibility(seed=seed)]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def junit_xml(reports: Iterable[OracleReport]) -> str:
    import xml.etree.ElementTree as ET

    reports = list(reports)
    root = ET.Element(
        "testsuite",
        name="oracle",
        tests=str(len(reports)),
        failures=str(sum(not r.passed for r in reports)),
        time=f"{sum(r.seconds for r in reports):.3f}",
    )
    for r in reports:
        case = ET.SubElement(root, "testcase", name=r.suite, classname="zariski.oracle", time=f"{r.seconds:.3f}")
        ET.SubElement(case, "system-out").text = f"{r.checks} checks, {r.failures} failures"
        if not r.passed:
            ET.SubElement(case, "failure", message=r.first_failure or "")
    return ET.tostring(root, encoding="unicode")
