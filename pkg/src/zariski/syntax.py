"""Surface syntax for groups, elements and described sets.

Groups::

    group   := "0" | term ("+" term)*
    term    := base ("^" mult)?
    base    := "Z" | "Q" | "Z(" int ")" | "Zp(" prime ",inf)"
    mult    := int | "w"

Elements are coordinate lists such as ``[Z(4)_0=1, Q_2=1/3]`` or ``0``.
Sets are unions ``atom | atom | ...`` of

* ``{x, y, ...}``                   finite sets
* ``[x +] G[n]``                    cosets of torsion subgroups
* ``[x +] [k*] round(n)``           standard round sets, optionally scaled
* ``[x +] split(<round>, 0|1)``     halves of a greedy split
* ``[x +] span(g, ...)``            cosets of finitely generated subgroups
* ``[x +] [k*] NAME``               named sets of a session

``print_group``, ``print_element`` and ``print_set`` produce text that
parses back to an equal value.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .cosets import coset
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
    card_add,
    prime_powers,
    scalar_mul,
)
from .rounds import (
    DEFAULT_COUNT_BOUND,
    DEFAULT_PREFIX,
    RoundGenerator,
    certify_round,
    make_round,
    scale_generator,
    split_trim,
)
from .sets import CosetAtom, DescribedSet, FgSubgroupAtom, FiniteAtom, RoundAtom

GRAMMAR = r"""
    group_text: group
    element_text: element
    set_text: union

    group: "0"                          -> trivial
         | term ("+" term)*
    term: base ("^" mult)?
    base: "Z"                           -> free
        | "Q"                           -> rational
        | "Z" "(" INT ")"               -> cyclic
        | "Zp" "(" INT "," "inf" ")"    -> quasi
    mult: INT                           -> finite_mult
        | "w"                           -> omega

    element: "0"                        -> zero
           | "[" [assign ("," assign)*] "]" -> coords
    assign: coordref "=" number
    coordref: base "_" INT
    number: SIGNED_INT ("/" INT)?

    union: atom ("|" atom)*
    atom: "{" [element ("," element)*] "}"     -> finite
        | offset? "G" "[" INT "]"              -> torsion
        | offset? rounds                       -> round_atom
        | offset? "span" "(" element ("," element)* ")" -> span
        | offset? scale? NAME                  -> named
        | "(" union ")"                        -> group_paren
    offset: element "+"
    rounds: scale? "round" "(" INT ")"         -> standard
          | scale? "split" "(" rounds "," INT ")" -> split
    scale: SIGNED_INT "*"?

    NAME: /(?!(round|split|span|inf|w|G|Z|Q|Zp)\b)[A-Za-z][A-Za-z0-9]*/

    %import common.INT
    %import common.SIGNED_INT
    %import common.WS
    %ignore WS
"""

_PARSERS = {
    start: Lark(GRAMMAR, start=start, parser="earley", ambiguity="resolve", propagate_positions=True)
    for start in ("group_text", "element_text", "set_text")
}

class ParseError(ValueError):
    """Malformed text; carries the offending position."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text, self.position = text, position
        if position is not None and text:
            message = f"{message} at column {position + 1}\n  {text}\n  {' ' * position}^"
        super().__init__(message)


def _parse(start: str, text: str):
    try:
        return _PARSERS[start].parse(text)
    except UnexpectedInput as err:
        pos = getattr(err, "pos_in_stream", None)
        if pos is None or pos < 0:
            pos = len(text)  # ran out of input
        raise ParseError("syntax error", text, pos) from None


@v_args(inline=True)
class _Builder(Transformer):
    def __init__(self, group: GroupDescriptor | None = None, names: Mapping | None = None, config=None):
        super().__init__()
        self.current = group
        self.names = names or {}
        self.config = config or {}

    # groups ------------------------------------------------------------------

    def group_text(self, g):
        return g

    def trivial(self):
        return GroupDescriptor()

    def group(self, *terms):
        total = GroupDescriptor()
        for t in terms:
            total = total + t
        return total

    def free(self):
        return ("base", FREE, None)

    def rational(self):
        return ("base", RATIONAL, None)

    def cyclic(self, n):
        n = int(n)
        if n < 1:
            raise DomainError("Z(n) needs n >= 1")
        return ("base", CYCLIC, n)

    def quasi(self, p):
        from sympy import isprime

        if not isprime(int(p)):
            raise DomainError(f"Zp({p},inf) needs a prime")
        return ("base", QUASI, int(p))

    def finite_mult(self, k):
        return int(k)

    def omega(self):
        return OMEGA

    def term(self, base, mult=1):
        _, kind, arg = base
        if mult == 0:
            return GroupDescriptor()
        if kind == FREE:
            return GroupDescriptor(free_rank=mult)
        if kind == RATIONAL:
            return GroupDescriptor(rational_rank=mult)
        if kind == QUASI:
            return GroupDescriptor(quasicyclic={arg: mult})
        cyc: dict = {}
        for p, s in prime_powers(arg):
            cyc[(p, s)] = card_add(cyc.get((p, s), 0), mult)
        return GroupDescriptor(cyclic=cyc)

    # elements ----------------------------------------------------------------

    def element_text(self, x):
        return x

    def _need_group(self):
        if self.current is None:
            raise DomainError("elements need a current group")
        return self.current

    def zero(self):
        return self._need_group().zero()

    def coords(self, *assigns):
        G = self._need_group()
        assigns = [a for a in assigns if a is not None]
        seen = set()
        for c, _ in assigns:
            if c in seen:
                raise DomainError(f"coordinate {print_coord(c)} given twice")
            seen.add(c)
        return Element(G, assigns)

    def assign(self, c, value):
        return (c, value)

    def coordref(self, base, index):
        _, kind, arg = base
        index = int(index)
        if kind == CYCLIC:
            pp = prime_powers(arg)
            if len(pp) != 1:
                raise DomainError(f"coordinates live in prime-power summands, not Z({arg})")
            (p, s), = pp
            return Coord(CYCLIC, p, s, index)
        if kind == QUASI:
            return Coord(QUASI, arg, 0, index)
        return Coord(kind, 0, 0, index)

    def number(self, num, den=None):
        return Fraction(int(num), int(den)) if den is not None else int(num)

    # sets --------------------------------------------------------------------

    def set_text(self, s):
        return s

    def union(self, *parts):
        G = self._need_group()
        atoms = []
        for part in parts:
            atoms += list(part.atoms)
        return DescribedSet(G, tuple(atoms))

    def group_paren(self, inner):
        return inner

    def _one(self, atom):
        return DescribedSet(self._need_group(), (atom,) if atom is not None else ())

    def finite(self, *points):
        points = tuple(p for p in points if p is not None)
        return self._one(FiniteAtom(points) if points else None)

    def offset(self, x):
        return _Offset(x)

    def _split_offset(self, args):
        if args and isinstance(args[0], _Offset):
            return args[0].element, list(args[1:])
        return None, list(args)

    def torsion(self, *args):
        base, (n,) = self._split_offset(args)
        anchor = base if base is not None else self._need_group().zero()
        return self._one(CosetAtom(coset(anchor, int(n))))

    def scale(self, k, *_):
        k = int(k)
        if k == 0:
            raise DomainError("scaling by 0 collapses a set to a point")
        return k

    def standard(self, *args):
        *k, n = args
        gen = make_round(self._need_group(), int(n))
        return scale_generator(gen, k[0]) if k else gen

    def split(self, *args):
        *k, inner, parity = args
        parity = int(parity)
        if parity not in (0, 1):
            raise DomainError("split keeps half 0 or half 1")
        halves = split_trim(inner, length=self.config.get("split_prefix", 50))
        gen = halves[parity]
        return scale_generator(gen, k[0]) if k else gen

    def round_atom(self, *args):
        base, (gen,) = self._split_offset(args)
        b = base if base is not None else self._need_group().zero()
        return self._one(RoundAtom(b, gen, self._certificate(gen)))

    def _certificate(self, gen: RoundGenerator):
        if gen.structural:
            return None
        return certify_round(
            gen,
            self.config.get("prefix_len", DEFAULT_PREFIX),
            self.config.get("count_bound", DEFAULT_COUNT_BOUND),
        )

    def span(self, *args):
        base, gens = self._split_offset(args)
        return self._one(FgSubgroupAtom(tuple(gens), base))

    def named(self, *args):
        offset, args = self._split_offset(args)
        name = str(args.pop())
        k = args.pop() if args else 1
        if name not in self.names:
            raise DomainError(f"unknown set {name!r}")
        X = self.names[name]
        if X.group != self._need_group():
            raise DomainError(f"set {name!r} lives in another group")
        X = scale_set(k, X) if k != 1 else X
        if offset is not None:
            from .sets import translate_set

            X = translate_set(offset, X)
        return X


class _Offset:
    def __init__(self, element: Element):
        self.element = element


def scale_set(k: int, X: DescribedSet) -> DescribedSet:
    """k X for sets made of points, round atoms and subgroup cosets."""
    atoms = []
    for atom in X.atoms:
        if isinstance(atom, FiniteAtom):
            atoms.append(FiniteAtom(tuple(scalar_mul(k, x) for x in atom.points)))
        elif isinstance(atom, RoundAtom):
            gen = scale_generator(atom.generator, k)
            cert = None if gen.structural else certify_round(gen)
            atoms.append(RoundAtom(scalar_mul(k, atom.base), gen, cert))
        elif isinstance(atom, FgSubgroupAtom):
            off = scalar_mul(k, atom.offset) if atom.offset is not None else None
            atoms.append(FgSubgroupAtom(tuple(scalar_mul(k, g) for g in atom.generators), off))
        else:
            raise DomainError("a multiple of a coset of G[n] is not a coset of a torsion subgroup in general")
    return DescribedSet(X.group, tuple(atoms))


def _run(start: str, text: str, group=None, names=None, config=None):
    tree = _parse(start, text)
    try:
        return _Builder(group, names, config).transform(tree)
    except VisitError as err:
        if isinstance(err.orig_exc, (DomainError, ParseError)):
            raise err.orig_exc from None
        raise


def parse_group(text: str) -> GroupDescriptor:
    return _run("group_text", text)


def parse_element(text: str, group: GroupDescriptor) -> Element:
    return _run("element_text", text, group)


def parse_set(text: str, group: GroupDescriptor, names: Mapping | None = None, config=None) -> DescribedSet:
    return _run("set_text", text, group, names, config)


# ---------------------------------------------------------------------------
# Printing


def _mult_text(k) -> str:
    return "w" if k is OMEGA else str(k)


def print_group(G: GroupDescriptor) -> str:
    terms = []
    for family, mult in G.families():
        if family.kind == FREE:
            base = "Z"
        elif family.kind == RATIONAL:
            base = "Q"
        elif family.kind == QUASI:
            base = f"Zp({family.prime},inf)"
        else:
            base = f"Z({family.prime ** family.power})"
        terms.append(base if mult == 1 else f"{base}^{_mult_text(mult)}")
    return " + ".join(terms) if terms else "0"


def print_coord(c: Coord) -> str:
    if c.kind == FREE:
        base = "Z"
    elif c.kind == RATIONAL:
        base = "Q"
    elif c.kind == QUASI:
        base = f"Zp({c.prime},inf)"
    else:
        base = f"Z({c.prime ** c.power})"
    return f"{base}_{c.index}"


def print_element(x: Element) -> str:
    if x.is_zero:
        return "0"
    return "[" + ", ".join(f"{print_coord(c)}={v}" for c, v in x.coords) + "]"


def _with_base(base: Element | None, text: str) -> str:
    if base is None or base.is_zero:
        return text
    return f"{print_element(base)} + {text}"


def print_atom(atom) -> str:
    if isinstance(atom, FiniteAtom):
        return "{" + ", ".join(print_element(x) for x in atom.points) + "}"
    if isinstance(atom, CosetAtom):
        return _with_base(atom.coset.anchor, f"G[{atom.coset.order}]")
    if isinstance(atom, RoundAtom):
        if atom.generator.label is None:
            raise DomainError("this round generator has no surface syntax")
        return _with_base(atom.base, atom.generator.label)
    return _with_base(atom.offset, "span(" + ", ".join(print_element(g) for g in atom.generators) + ")")


def print_set(X: DescribedSet) -> str:
    return " | ".join(print_atom(a) for a in X.atoms) if X.atoms else "{}"


def print_coset(E) -> str:
    return _with_base(E.anchor, f"G[{E.order}]")
