"""Precompact metric group topologies from finitely many characters.

A family of characters h = (h_1, ..., h_R) of G into the circle T = R/Z
induces a precompact metric group topology (pull back the sup metric of T^R).
Its closure of a set X agrees with the Zariski closure when the images of
the round pieces of X are dense in the right torsion grids, and everything
outside the closure stays away from h(X).  This module builds such
characters at random and checks both properties numerically.

The first K rows are the *density rows* that get checked for covering; the
remaining rows only serve to make h injective on a finite window of the
group (the truncation).
"""
from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted
from sympy import prime as nth_prime

from .cosets import coordinate_level, coset
from .groups import (
    CYCLIC,
    FREE,
    OMEGA,
    QUASI,
    RATIONAL,
    Coord,
    DomainError,
    Element,
    GroupDescriptor,
    order_of,
)
from .rounds import CyclicRay, make_round
from .sets import (
    CosetAtom,
    DescribedSet,
    FgSubgroupAtom,
    FiniteAtom,
    RoundAtom,
    closure,
    finite_subgroup,
    is_infinite,
)

DEFAULT_CHARACTERS = 4
DEFAULT_PREFIX = 2000
DEFAULT_EPS = 0.05
DEFAULT_TRUNCATION = 64
DEFAULT_BITS = 128
DEFAULT_RETRIES = 3
MAX_GRID_CELLS = 2_000_000


class VerificationError(RuntimeError):
    """A numeric verification did not succeed within its budget."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


# ---------------------------------------------------------------------------
# Circle values


@dataclass(frozen=True)
class TorusValue:
    """exact + fixed / 2**bits (mod 1).

    Torsion coordinates only ever touch the exact part, so images of
    torsion elements are exact rationals.
    """

    exact: Fraction = Fraction(0)
    fixed: int = 0
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        object.__setattr__(self, "exact", self.exact % 1)
        object.__setattr__(self, "fixed", self.fixed % (1 << self.bits))

    def __add__(self, other: "TorusValue") -> "TorusValue":
        return TorusValue(self.exact + other.exact, self.fixed + other.fixed, self.bits)

    def __neg__(self) -> "TorusValue":
        return TorusValue(-self.exact, -self.fixed, self.bits)

    def __sub__(self, other: "TorusValue") -> "TorusValue":
        return self + (-other)

    @property
    def is_exact(self) -> bool:
        return self.fixed == 0

    def __float__(self) -> float:
        return (float(self.exact) + self.fixed / 2.0**self.bits) % 1.0

    def circle_distance(self) -> float:
        """Distance to 0 on the circle."""
        v = float(self)
        return min(v, 1.0 - v)


def _uniform(key: tuple, modulus: int) -> int:
    digest = hashlib.blake2b(repr(key).encode(), digest_size=24).digest()
    return int.from_bytes(digest, "big") % modulus


@lru_cache(maxsize=None)
def _odd_prime(k: int) -> int:
    return nth_prime(k + 2)  # 3, 5, 7, ...


@dataclass(frozen=True)
class Irrational:
    """multiplier * sqrt(radicand), kept symbolically next to its fixed-point value."""

    multiplier: int
    radicand: int
    bits: int = DEFAULT_BITS

    @property
    def scaled(self) -> int:
        """floor(multiplier * sqrt(radicand) * 2**bits)."""
        return math.isqrt(self.multiplier**2 * self.radicand << (2 * self.bits))

    def __str__(self):
        return f"{self.multiplier}*sqrt({self.radicand})"


# ---------------------------------------------------------------------------
# Character families


class CharacterMatrix:
    """Rows of characters, each determined lazily coordinate by coordinate.

    A row assigns to every coordinate of the group a character of that
    summand: a/p^s on Z(p^s), a p-adic integer on Z(p^inf), and x -> x*alpha
    with alpha irrational on Z and Q.  ``overrides`` pins chosen
    (row, coordinate) entries to exact rationals, which is how degenerate
    examples are built.
    """

    def __init__(
        self,
        group: GroupDescriptor,
        n_characters: int = DEFAULT_CHARACTERS,
        seed: int = 0,
        attempt: int = 0,
        truncation: int = DEFAULT_TRUNCATION,
        bits: int = DEFAULT_BITS,
        overrides: dict | None = None,
    ):
        if n_characters < 1:
            raise DomainError("at least one character is needed")
        if truncation < 1:
            raise DomainError("the truncation must keep at least one copy")
        self.group = group
        self.n_characters = n_characters
        self.seed, self.attempt = seed, attempt
        self.truncation = truncation
        self.bits = bits
        self.overrides = dict(overrides or {})
        self.rows: list[int] = list(range(n_characters))
        self._cache: dict = {}
        self._padic: dict = {}
        self.injectivity: dict = {}

    # per-coordinate characters ---------------------------------------------

    def _key(self, row, coord, *extra):
        return (self.seed, self.attempt, row, tuple(coord), *extra)

    def coordinate_character(self, row: int, coord: Coord):
        """What the row does on one summand copy (cached)."""
        k = (row, coord)
        if k in self._cache:
            return self._cache[k]
        if k in self.overrides:
            value = Fraction(self.overrides[k])
        elif coord.kind == CYCLIC:
            q = coord.prime**coord.power
            value = Fraction(_uniform(self._key(row, coord), q), q)
        elif coord.kind == QUASI:
            value = None  # digits are drawn on demand
        else:
            # distinct odd primes per coordinate keep the irrationals of a row independent
            slot = 2 * coord.index + (coord.kind == RATIONAL)
            value = Irrational(1 + _uniform(self._key(row, coord), 1 << 16), _odd_prime(slot), self.bits)
        self._cache[k] = value
        return value

    def _padic_residue(self, row: int, coord: Coord, depth: int) -> int:
        """z mod p^depth for the p-adic integer z of this row on a quasicyclic copy."""
        digits = self._padic.setdefault((row, coord), [])
        p = coord.prime
        while len(digits) < depth:
            digits.append(_uniform(self._key(row, coord, len(digits)), p))
        return sum(d * p**i for i, d in enumerate(digits[:depth]))

    def coordinate_value(self, row: int, coord: Coord, value) -> TorusValue:
        char = self.coordinate_character(row, coord)
        if isinstance(char, Fraction):
            return TorusValue(Fraction(value) * char, 0, self.bits)
        if coord.kind == QUASI:
            v = Fraction(value)
            depth = _exponent_of(v.denominator, coord.prime)
            z = self._padic_residue(row, coord, depth)
            return TorusValue(Fraction(v.numerator * z, v.denominator), 0, self.bits)
        v = Fraction(value)
        return TorusValue(Fraction(0), (v.numerator * char.scaled) // v.denominator, self.bits)

    # images ----------------------------------------------------------------

    def row_value(self, row: int, x: Element) -> TorusValue:
        total = TorusValue(Fraction(0), 0, self.bits)
        for c, v in x.coords:
            total = total + self.coordinate_value(row, c, v)
        return total

    def image(self, x: Element, rows: Sequence[int] | None = None) -> list[TorusValue]:
        return [self.row_value(r, x) for r in (self.rows if rows is None else rows)]

    def density_image(self, x: Element) -> list[TorusValue]:
        return self.image(x, self.rows[: self.n_characters])

    def _float_value(self, row: int, coord: Coord, value) -> float:
        char = self.coordinate_character(row, coord)
        if isinstance(char, Fraction):
            w = value * char
            return float(w - math.floor(w))
        v = Fraction(value)
        if coord.kind == QUASI:
            z = self._padic_residue(row, coord, _exponent_of(v.denominator, coord.prime))
            return (v.numerator * z % v.denominator) / v.denominator
        return ((v.numerator * char.scaled) // v.denominator % (1 << self.bits)) / 2.0**self.bits

    def float_image(self, points: Iterable[Element], rows: Sequence[int] | None = None) -> np.ndarray:
        """Images as floats in [0, 1), skipping the exact bookkeeping."""
        rows = self.rows if rows is None else rows
        data = [[sum(self._float_value(r, c, v) for c, v in x.coords) % 1.0 for r in rows] for x in points]
        return np.array(data, dtype=float).reshape(-1, len(rows))

    def describe(self) -> dict:
        table = {}
        for (row, coord), char in sorted(self._cache.items(), key=lambda kv: (kv[0][0], tuple(kv[0][1]))):
            if row not in self.rows[: self.n_characters] or coord.index >= 4:
                continue
            if char is None:
                char = f"p-adic, digits {self._padic.get((row, coord), [])[:6]}"
            table.setdefault(str(self.rows.index(row)), {})[_coord_name(coord)] = str(char)
        return {
            "density_rows": self.n_characters,
            "total_rows": len(self.rows),
            "seed": self.seed,
            "attempt": self.attempt,
            "truncation": self.truncation,
            "precision_bits": self.bits,
            "sample_entries": table,
            "injectivity": self.injectivity,
            "scale": "at truncation scale",
        }

    # truncation --------------------------------------------------------------

    def window(self) -> list[Coord]:
        """Coordinates kept by the truncation."""
        out = []
        for family, mult in self.group.families():
            count = self.truncation if mult is OMEGA else min(mult, self.truncation)
            out += [Coord(family.kind, family.prime, family.power, i) for i in range(count)]
        return out

    def socle_vector(self, row: int, coord: Coord) -> int:
        """The row on the order-p element of the copy, as a residue mod p."""
        if coord.kind == CYCLIC:
            char = self.coordinate_character(row, coord)
            return (char * coord.prime**coord.power).numerator % coord.prime
        char = self.coordinate_character(row, coord)
        if isinstance(char, Fraction):
            return (char * coord.prime).numerator % coord.prime if (char * coord.prime).denominator == 1 else 0
        return self._padic_residue(row, coord, 1)

    def make_injective(self, max_extra: int | None = None):
        """Append rows until h is injective on the torsion of the truncation.

        A torsion kernel would contain an element of prime order, so it is
        enough that, for each prime p, the rows restricted to the order-p
        elements of the window span the full dual space over F_p.  Free and
        rational copies get independent square roots in every row, so they
        add nothing to the kernel.
        """
        by_prime: dict[int, list[Coord]] = {}
        for c in self.window():
            if c.kind in (CYCLIC, QUASI):
                by_prime.setdefault(c.prime, []).append(c)
        echelon = {p: _Echelon(p, len(cs)) for p, cs in by_prime.items()}
        budget = max_extra if max_extra is not None else 4 * (max((len(cs) for cs in by_prime.values()), default=0) + 8)
        candidate = max(self.rows) + 1
        tried = 0
        pinned = {row for row, _ in self.overrides}

        def absorb(row) -> bool:
            gained = False
            for p, cs in by_prime.items():
                if not echelon[p].full and echelon[p].add([self.socle_vector(row, c) for c in cs]):
                    gained = True
            return gained

        # a density row that adds nothing is redrawn, as long as that can still help
        for i, row in enumerate(self.rows):
            while not absorb(row) and row not in pinned and not all(e.full for e in echelon.values()):
                if tried >= budget:
                    break
                self._forget(row)
                row = self.rows[i] = candidate
                candidate += 1
                tried += 1
        while not all(e.full for e in echelon.values()):
            if tried >= budget:
                raise VerificationError(
                    "could not make the characters injective on the truncation",
                    {p: [e.rank, e.dim] for p, e in echelon.items()},
                )
            if absorb(candidate):
                self.rows.append(candidate)
            else:
                self._forget(candidate)
            candidate += 1
            tried += 1
        self.injectivity = {
            "injective_on_truncation": True,
            "socle_ranks": {str(p): [e.rank, e.dim] for p, e in sorted(echelon.items())},
            "free_part": "independent square roots of distinct primes in every row",
            "extra_rows": len(self.rows) - self.n_characters,
        }
        return self

    def _forget(self, row: int):
        self._cache = {k: v for k, v in self._cache.items() if k[0] != row}
        self._padic = {k: v for k, v in self._padic.items() if k[0] != row}

    def check_homomorphism(self, pairs: int = 50, rng_seed: int = 0) -> dict:
        """h(x + y) = h(x) + h(y): exactly on torsion coordinates, to 2^-100 elsewhere."""
        rng = random.Random(rng_seed)
        worst = 0.0
        exact_ok = True
        for _ in range(pairs):
            x, y = random_element(self, rng), random_element(self, rng)
            for r in self.rows[: self.n_characters]:
                d = self.row_value(r, x + y) - self.row_value(r, x) - self.row_value(r, y)
                exact_ok &= d.exact == 0
                err = min(d.fixed, (1 << self.bits) - d.fixed) / 2.0**self.bits
                worst = max(worst, err)
        tolerance = 2.0**-100
        return {"exact_part_additive": exact_ok, "max_fixed_error": worst, "ok": exact_ok and worst <= tolerance}


def _exponent_of(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _coord_name(c: Coord) -> str:
    if c.kind == CYCLIC:
        return f"Z({c.prime ** c.power})_{c.index}"
    if c.kind == QUASI:
        return f"Zp({c.prime},inf)_{c.index}"
    return f"{'Z' if c.kind == FREE else 'Q'}_{c.index}"


class _Echelon:
    """Incremental row reduction over F_p."""

    def __init__(self, p: int, dim: int):
        self.p, self.dim = p, dim
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.dim

    def add(self, vector: list[int]) -> bool:
        p = self.p
        v = [a % p for a in vector]
        for col, piv in self.pivots.items():
            if v[col]:
                f = v[col]
                v = [(a - f * b) % p for a, b in zip(v, piv)]
        lead = next((i for i, a in enumerate(v) if a), None)
        if lead is None:
            return False
        inv = pow(v[lead], -1, p)
        v = [(a * inv) % p for a in v]
        for col, piv in list(self.pivots.items()):
            if piv[lead]:
                f = piv[lead]
                self.pivots[col] = [(a - f * b) % p for a, b in zip(piv, v)]
        self.pivots[lead] = v
        return True


# ---------------------------------------------------------------------------
# Sampling inside the truncation


def _random_coordinate_value(c: Coord, level, rng: random.Random):
    if c.kind == CYCLIC:
        step = c.prime ** (c.power - min(level, c.power))
        return step * rng.randrange(c.prime**c.power // step)
    if c.kind == QUASI:
        depth = 6 if level == math.inf else level
        return Fraction(rng.randrange(c.prime**depth), c.prime**depth)
    if level != math.inf:
        return 0
    if c.kind == FREE:
        return rng.randint(-50, 50)
    return Fraction(rng.randint(-50, 50), rng.randint(1, 12))


def random_element(h: CharacterMatrix, rng: random.Random, order: int = 0, support: int = 3) -> Element:
    """A random element of G[order] supported on a few window coordinates."""
    window = [c for c in h.window() if coordinate_level(c, order) != 0]
    if not window:
        return h.group.zero()
    chosen = rng.sample(window, min(support, len(window)))
    return Element(h.group, [(c, _random_coordinate_value(c, coordinate_level(c, order), rng)) for c in chosen])


# ---------------------------------------------------------------------------
# Density


@dataclass
class DensityReport:
    ok: bool
    order: int
    prefix_length: int
    eps: float
    grid_size: int
    covered: int
    worst_empty_cell: list | None = None
    notes: str = ""

    @property
    def covering_fraction(self) -> float:
        return self.covered / self.grid_size if self.grid_size else 1.0

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "order": self.order,
            "prefix_length": self.prefix_length,
            "eps": self.eps,
            "grid_size": self.grid_size,
            "covered": self.covered,
            "covering_fraction": self.covering_fraction,
            "worst_empty_cell": self.worst_empty_cell,
            "notes": self.notes,
        }


def verify_density(h: CharacterMatrix, target: RoundAtom, length: int = DEFAULT_PREFIX, eps: float = DEFAULT_EPS) -> DensityReport:
    """Does the image of the first ``length`` terms of the target fill its grid?

    For an n-round target with n >= 1 the shifted image lies in T[n]^K and
    must hit every one of its n^K points (compared exactly).  For n = 0
    every cell of the eps-grid of [0, 1)^K must contain an image point.
    """
    if length < 1 or eps <= 0:
        raise DomainError("need a positive prefix length and eps")
    K = h.n_characters
    n = target.order
    shift = h.density_image(target.base)
    points = [target.generator.element(i) for i in range(length)]
    if n >= 1:
        grid_size = n**K
        seen = set()
        for x in points:
            img = h.density_image(x)
            if all(v.is_exact and (v.exact * n).denominator == 1 for v in img):
                seen.add(tuple(int(v.exact * n) for v in img))
        missing = None
        if len(seen) < grid_size:
            missing = next(
                [Fraction(k, n) for k in cell]
                for cell in np.ndindex(*([n] * K))
                if tuple(cell) not in seen
            )
            missing = [str(q + s.exact) for q, s in zip(missing, shift)]
        return DensityReport(len(seen) == grid_size, n, length, eps, grid_size, len(seen), missing)
    per_axis = math.ceil(1 / eps - 1e-12)
    grid_size = per_axis**K
    if grid_size > MAX_GRID_CELLS:
        return DensityReport(False, 0, length, eps, grid_size, 0, None, "eps-grid too large to check")
    values = h.float_image(points, h.rows[:K])
    cells = np.minimum((values / eps).astype(np.int64), per_axis - 1)
    flat = np.ravel_multi_index(cells.T, [per_axis] * K)
    hit = np.zeros(grid_size, dtype=bool)
    hit[flat] = True
    covered = int(hit.sum())
    worst = None
    if covered < grid_size:
        empty = np.flatnonzero(~hit)[:256]
        centers = (np.array(np.unravel_index(empty, [per_axis] * K)).T + 0.5) * eps
        diff = np.abs(centers[:, None, :] - values[None, :, :])
        gaps = np.minimum(diff, 1 - diff).max(axis=2).min(axis=1)
        worst = [round(float(v) + float(s), 6) % 1 for v, s in zip(centers[int(gaps.argmax())], shift)]
    return DensityReport(covered == grid_size, 0, length, eps, grid_size, covered, worst)


def build_characters(
    group: GroupDescriptor,
    targets: Sequence[RoundAtom],
    n_characters: int = DEFAULT_CHARACTERS,
    seed: int = 0,
    prefix_length: int = DEFAULT_PREFIX,
    eps: float = DEFAULT_EPS,
    truncation: int = DEFAULT_TRUNCATION,
    bits: int = DEFAULT_BITS,
    max_retries: int = DEFAULT_RETRIES,
):
    """Random characters that are injective on the truncation and make every target dense.

    Returns ``(matrix, reports, retries_used)``.
    """
    for atom in targets:
        if atom.base.group != group:
            raise DomainError("target from another group")
        if not atom.certified:
            raise DomainError("targets must be certified round atoms")
    last = None
    for attempt in range(max_retries + 1):
        h = CharacterMatrix(group, n_characters, seed, attempt, truncation, bits)
        h.make_injective()
        reports = [verify_density(h, t, prefix_length, eps) for t in targets]
        if all(r.ok for r in reports):
            return h, reports, attempt
        last = next(r for r, t in zip(reports, targets) if not r.ok)
    raise VerificationError(
        f"density not reached after {max_retries} retries",
        {"failing_target_order": last.order, "covering_fraction": last.covering_fraction, "report": last.as_dict()},
    )


# ---------------------------------------------------------------------------
# Closure realization


@dataclass
class RealizationVerdict:
    ok: bool
    sound: bool
    tight: bool
    reason: str
    targets: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "verdict": "PASS" if self.ok else "FAIL",
            "sound": self.sound,
            "tight": self.tight,
            "reason": self.reason,
            "targets": self.targets,
            "diagnostics": self.diagnostics,
            "scale": "at truncation scale",
        }


def closure_targets(X: DescribedSet) -> list[RoundAtom]:
    """One round atom of X per non-singleton irreducible component of its closure."""
    G = X.group
    _, cert = closure(X)
    targets = []
    for anchor, order, witness in cert.pieces:
        atom = X.atoms[witness]
        if isinstance(atom, RoundAtom) and atom.order == order and atom.base in coset(anchor, order):
            targets.append(atom)
        elif isinstance(atom, CosetAtom):
            targets.append(RoundAtom(anchor, make_round(G, order)))
        elif isinstance(atom, FgSubgroupAtom):
            g = next(g for g in atom.generators if order_of(g) == 0)
            offset = atom.offset if atom.offset is not None else G.zero()
            targets.append(RoundAtom(offset, CyclicRay(G, g)))
        else:
            targets.append(atom)
    return targets


def realize_closure(
    X: DescribedSet,
    n_characters: int = DEFAULT_CHARACTERS,
    prefix_length: int = DEFAULT_PREFIX,
    eps: float = DEFAULT_EPS,
    seed: int = 0,
    truncation: int = DEFAULT_TRUNCATION,
    samples: int = 30,
    max_retries: int = DEFAULT_RETRIES,
) -> RealizationVerdict:
    """Check numerically that the character topology closes X to its Zariski closure.

    sound: every sampled point of the closure is within eps of h(X) on the
    density rows.  tight: every sampled point outside the closure is at
    sup-distance >= eps from the images of the infinite pieces (over all
    rows) and differs from each isolated point.
    """
    G = X.group
    if not is_infinite(X):
        return RealizationVerdict(True, True, True, "finite sets are closed in every Hausdorff group topology")
    A, cert = closure(X)
    targets = closure_targets(X)
    try:
        h, reports, retries = build_characters(
            G, targets, n_characters, seed, prefix_length, eps, truncation, max_retries=max_retries
        )
    except VerificationError as err:
        return RealizationVerdict(False, False, False, str(err), diagnostics=err.report)
    rng = random.Random(seed)

    # images of X: target prefixes plus every finite point
    finite_points = []
    for atom in X.atoms:
        if isinstance(atom, FiniteAtom):
            finite_points += list(atom.points)
        elif isinstance(atom, FgSubgroupAtom) and not atom.infinite:
            off = atom.offset if atom.offset is not None else G.zero()
            finite_points += [off + y for y in finite_subgroup(atom.generators, G)]
    infinite_points = [t.element(i) for t in targets for i in range(prefix_length)]
    K = h.rows[:n_characters]
    near = h.float_image(infinite_points + finite_points, K)

    def sup_distance(img, cloud):
        diff = np.abs(cloud - img[None, :]) % 1.0
        return np.minimum(diff, 1.0 - diff).max(axis=1)

    worst_sound = 0.0
    for anchor, order in [(a, n) for a, n, _ in cert.pieces] + [(x, 1) for x in cert.isolated]:
        for _ in range(samples if order != 1 else 1):
            y = anchor + random_element(h, rng, order)
            d = float(sup_distance(h.float_image([y], K)[0], near).min())
            worst_sound = max(worst_sound, d)
    sound = worst_sound < eps

    far = h.float_image(infinite_points)
    isolated_images = {tuple(h.image(x)) for x in cert.isolated}
    worst_tight, tested = 1.0, 0
    for _ in range(samples * 20):
        if tested >= samples:
            break
        y = random_element(h, rng, 0, support=rng.randint(1, 3))
        if y in A:
            continue
        tested += 1
        d = float(sup_distance(h.float_image([y])[0], far).min()) if len(far) else 1.0
        if tuple(h.image(y)) in isolated_images:
            d = 0.0
        worst_tight = min(worst_tight, d)
    tight = worst_tight >= eps
    ok = sound and tight
    return RealizationVerdict(
        ok,
        sound,
        tight,
        "numeric closure matches the Zariski closure" if ok else "numeric closure differs",
        [r.as_dict() for r in reports],
        {
            "retries": retries,
            "worst_sound_distance": worst_sound,
            "min_tight_distance": worst_tight if tested else None,
            "outside_samples": tested,
            "characters": h.describe(),
        },
    )


# ---------------------------------------------------------------------------
# Estimator facade


class CharacterEmbedding(TransformerMixin, BaseEstimator):
    """Embed group elements into [0, 1)^K through random characters.

    ``fit`` takes a list of round atoms whose images must be dense and
    builds an injective-on-truncation character family; ``transform`` maps
    elements to the density rows as floats.
    """

    def __init__(
        self,
        group=None,
        n_characters=DEFAULT_CHARACTERS,
        prefix_length=DEFAULT_PREFIX,
        eps=DEFAULT_EPS,
        seed=0,
        truncation=DEFAULT_TRUNCATION,
        precision_bits=DEFAULT_BITS,
        max_retries=DEFAULT_RETRIES,
    ):
        self.group = group
        self.n_characters = n_characters
        self.prefix_length = prefix_length
        self.eps = eps
        self.seed = seed
        self.truncation = truncation
        self.precision_bits = precision_bits
        self.max_retries = max_retries

    def fit(self, targets, y=None):
        targets = list(targets)
        group = self.group if self.group is not None else targets[0].base.group
        self.matrix_, self.density_reports_, self.retries_ = build_characters(
            group,
            targets,
            self.n_characters,
            self.seed,
            self.prefix_length,
            self.eps,
            self.truncation,
            self.precision_bits,
            self.max_retries,
        )
        return self

    def transform(self, elements) -> np.ndarray:
        check_is_fitted(self, "matrix_")
        h = self.matrix_
        return h.float_image(list(elements), h.rows[: h.n_characters])
