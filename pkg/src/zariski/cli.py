"""Command line front end.

Every command prints one JSON document carrying the schema version, the
configuration it ran with, and the result.  Exit codes: 0 success,
1 parse error, 2 domain error, 3 failed verification.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import closed, oracle, realization, sets
from .groups import (
    DomainError,
    canonical_torsion_order,
    essential_order,
    exponent,
    is_irreducible_torsion,
    torsion_subgroup,
)
from .rounds import certify_round, split_trim
from .syntax import ParseError, parse_group, parse_set, print_coset, print_element, print_group, print_set

SCHEMA_VERSION = 1
EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class VerificationFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__("verification failed")
        self.payload = payload


@dataclass
class Config:
    prefix_len: int = 1000
    count_bound: int = 8
    max_transversal: int = closed.DEFAULT_MAX_TRANSVERSAL
    seed: int = 0

    def validate(self):
        for name in ("prefix_len", "count_bound", "max_transversal"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be at least 1")
        return self


@dataclass
class Session:
    """Named groups and sets; sets are stored as text in their group."""

    groups: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)
    current: str | None = None
    config: Config = field(default_factory=Config)

    @classmethod
    def load(cls, path: Path | None) -> "Session":
        if path is None or not path.exists():
            return cls()
        data = json.loads(path.read_text())
        if data.get("schema_version") != SCHEMA_VERSION:
            raise DomainError(f"session schema {data.get('schema_version')} is not {SCHEMA_VERSION}")
        return cls(data["groups"], data["sets"], data["current_group"], Config(**data["config"]))

    def save(self, path: Path):
        data = {
            "schema_version": SCHEMA_VERSION,
            "groups": self.groups,
            "sets": self.sets,
            "current_group": self.current,
            "config": asdict(self.config),
        }
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")

    def define_group(self, name: str, text: str):
        if name in self.sets:
            raise DomainError(f"{name!r} already names a set")
        self.groups[name] = print_group(parse_group(text))
        self.current = name

    def group(self, override: str | None = None):
        if override is not None:
            return parse_group(self.groups.get(override, override))
        if self.current is None:
            raise DomainError("no current group: pass --group or define one with 'group NAME TEXT'")
        return parse_group(self.groups[self.current])

    def named_sets(self, G) -> dict:
        out = {}
        for name, entry in self.sets.items():
            if parse_group(self.groups[entry["group"]]) == G:
                out[name] = parse_set(entry["text"], G, {}, self.parse_config)
        return out

    @property
    def parse_config(self) -> dict:
        return {"prefix_len": self.config.prefix_len, "count_bound": self.config.count_bound}

    def define_set(self, name: str, X, group_name: str):
        if name in self.groups:
            raise DomainError(f"{name!r} already names a group")
        self.sets[name] = {"group": group_name, "text": print_set(X)}


# ---------------------------------------------------------------------------
# Rendering


def render_algebraic(A) -> str:
    if A.is_whole:
        return "G"
    if A.is_empty:
        return "{}"
    return " | ".join(print_coset(c) for c in A.parts)


def render_dim(d):
    return "inf" if d == math.inf else d


def render_atom(atom) -> str:
    try:
        return print_set(sets.DescribedSet(_atom_group(atom), (atom,)))
    except DomainError:
        return repr(atom)


def _atom_group(atom):
    if isinstance(atom, sets.FiniteAtom):
        return atom.points[0].group
    if isinstance(atom, sets.CosetAtom):
        return atom.coset.group
    if isinstance(atom, sets.RoundAtom):
        return atom.base.group
    return atom.generators[0].group


# ---------------------------------------------------------------------------
# Commands


def _set_arg(session: Session, args):
    G = session.group(args.group)
    X = parse_set(args.set, G, session.named_sets(G), session.parse_config)
    return G, X


def cmd_group(session, args):
    session.define_group(args.name, args.text)
    G = session.group()
    return {"name": args.name, "group": print_group(G)}


def cmd_let(session, args):
    G, X = _set_arg(session, args)
    name = args.group if args.group in session.groups else session.current
    session.define_set(args.name, X, name)
    return {"name": args.name, "set": print_set(X)}


def cmd_show(session, args):
    return {"groups": session.groups, "sets": session.sets, "current_group": session.current}


def cmd_eo(session, args):
    G = session.group(args.group)
    return {"group": print_group(G), "eo": essential_order(G)}


def cmd_exponent(session, args):
    G = session.group(args.group)
    return {"group": print_group(G), "exponent": exponent(G)}


def cmd_torsion(session, args):
    G = session.group(args.group)
    H = torsion_subgroup(G, args.n)
    cert = is_irreducible_torsion(G, args.n) if args.n == canonical_torsion_order(G, args.n) else None
    return {
        "group": print_group(G),
        "n": args.n,
        "torsion_subgroup": print_group(H),
        "canonical_order": canonical_torsion_order(G, args.n),
        "irreducible": cert.irreducible if cert else None,
    }


def cmd_closure(session, args):
    G, X = _set_arg(session, args)
    A, cert = sets.closure(X, session.config.max_transversal)
    comps = closed.irreducible_components(A, session.config.max_transversal)
    return {
        "set": print_set(X),
        "closed": render_algebraic(A),
        "components": len(comps),
        "isolated": [print_element(x) for x in cert.isolated],
        "certificate": cert.as_dict(print_element),
    }


def cmd_components(session, args):
    G, X = _set_arg(session, args)
    out = []
    for comp in sets.components_of_set(X, session.config.max_transversal):
        out.append(
            {
                "closure": print_coset(comp.closure),
                "traces": [{"atom": i, "trace": render_atom(t)} for i, t in comp.traces],
            }
        )
    return {"set": print_set(X), "components": out}


def cmd_connected(session, args):
    G, X = _set_arg(session, args)
    A = sets.closure_set(X, session.config.max_transversal)
    parts = closed.connected_components(A, session.config.max_transversal)
    return {
        "set": print_set(X),
        "connected": len(parts) <= 1,
        "connected_components": [render_algebraic(P) for P in parts],
    }


def cmd_dim(session, args):
    G, X = _set_arg(session, args)
    return {"set": print_set(X), "dim": render_dim(sets.dim_of_set(X))}


def cmd_mval(session, args):
    G, X = _set_arg(session, args)
    M = sets.big_m(X)
    return {"set": print_set(X), "M_generators": M.minimal, "m": M.minimum}


def cmd_dense(session, args):
    G, X = _set_arg(session, args)
    return {
        "set": print_set(X),
        "dense": sets.is_dense(X),
        "multiples_stay_infinite": sets.multiples_stay_infinite(X) if exponent(G) == 0 else None,
    }


def cmd_potdense(session, args):
    G, X = _set_arg(session, args)
    verdict = sets.is_potentially_dense(X)
    return {"set": print_set(X), **asdict(verdict)}


def cmd_curve(session, args):
    G, X = _set_arg(session, args)
    curve = sets.is_curve(X)
    return {"set": print_set(X), "curve": curve, "m": sets.little_m(X)}


def cmd_irreducible(session, args):
    G, X = _set_arg(session, args)
    comps = closed.irreducible_components(sets.closure_set(X, session.config.max_transversal))
    return {"set": print_set(X), "irreducible": len(comps) == 1, "components": [print_coset(c) for c in comps]}


def _bound(cfg: Config, gen) -> int | None:
    # structural generators carry their own, tighter bound
    return None if gen.structural else cfg.count_bound


def cmd_round(session, args):
    cfg = session.config
    if args.action == "make":
        G = session.group(args.group)
        X = parse_set(f"round({args.n})", G, {}, session.parse_config)
        atom = X.atoms[0]
        cert = certify_round(atom.generator, cfg.prefix_len, _bound(cfg, atom.generator))
        if args.name:
            session.define_set(args.name, X, args.group if args.group in session.groups else session.current)
        result = {"set": print_set(X), "generator": atom.generator.describe(), "certificate": cert.as_dict()}
    else:
        G, X = _set_arg(session, args)
        checks = []
        for atom in X.atoms:
            if isinstance(atom, sets.RoundAtom):
                cert = certify_round(atom.generator, cfg.prefix_len, _bound(cfg, atom.generator))
                checks.append({"atom": render_atom(atom), "certificate": cert.as_dict()})
        if not checks:
            raise DomainError("the set has no round atoms")
        result = {"set": print_set(X), "checks": checks}
        if not all(c["certificate"]["ok"] for c in checks):
            raise VerificationFailed(result)
    return result


def cmd_trim(session, args):
    G, X = _set_arg(session, args)
    if len(X.atoms) != 1 or not isinstance(X.atoms[0], sets.RoundAtom):
        raise DomainError("trim needs a single round atom")
    atom = X.atoms[0]
    y0, y1, cert = split_trim(atom.generator, args.length)
    halves = [sets.DescribedSet(G, (sets.RoundAtom(atom.base, y, atom.certificate),)) for y in (y0, y1)]
    group_name = args.group if args.group in session.groups else session.current
    for name, half in zip(args.names or (), halves):
        session.define_set(name, half, group_name)
    result = {"halves": [print_set(h) for h in halves], "certificate": cert.as_dict()}
    if not cert.disjoint:
        raise VerificationFailed(result)
    return result


def cmd_realize(session, args):
    G, X = _set_arg(session, args)
    seed = session.config.seed if args.seed is None else args.seed
    verdict = realization.realize_closure(
        X,
        n_characters=args.chars,
        prefix_length=args.prefix,
        eps=args.eps,
        seed=seed,
        truncation=args.truncation,
    )
    result = {"set": print_set(X), "closure": render_algebraic(sets.closure_set(X)), **verdict.as_dict()}
    if args.csv:
        _dump_images(args.csv, X, args, seed)
    if not verdict.ok:
        raise VerificationFailed(result)
    return result


def _dump_images(path, X, args, seed):
    targets = realization.closure_targets(X)
    h, _, _ = realization.build_characters(
        X.group, targets, args.chars, seed, args.prefix, args.eps, args.truncation
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["target", "index"] + [f"h{k}" for k in range(args.chars)])
        for t_index, target in enumerate(targets):
            points = [target.element(i) for i in range(args.prefix)]
            for i, row in enumerate(h.float_image(points, h.rows[: args.chars])):
                writer.writerow([t_index, i] + [f"{v:.12f}" for v in row])


def cmd_oracle(session, args):
    seed = session.config.seed if args.seed is None else args.seed
    reports = []
    for suite in args.suite:
        reports += oracle.run_suite(suite, cap=args.cap, seed=seed)
    result = {"reports": [r.as_dict() for r in reports], "passed": all(r.passed for r in reports)}
    if args.junit:
        Path(args.junit).write_text(oracle.junit_xml(reports))
    if not result["passed"]:
        raise VerificationFailed(result)
    return result


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    env_seed = int(os.environ.get("ZK_SEED", "0"))
    p = argparse.ArgumentParser(prog="zariski", description="Zariski closures in abelian groups")
    p.add_argument("--session", type=Path, help="session JSON file (created if missing)")
    p.add_argument("--group", help="group text or group name to use instead of the current one")
    p.add_argument("--prefix-len", type=int, default=None, help="prefix length for round certificates (1000)")
    p.add_argument("--count-bound", type=int, default=None, help="collision bound for user sequences (8)")
    p.add_argument("--max-transversal", type=int, default=None, help="cap on coset transversals (4096)")
    p.add_argument("--seed", type=int, default=None, help=f"default seed (ZK_SEED, now {env_seed})")
    p.add_argument("--compact", action="store_true", help="print JSON on one line")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="define a group and make it current")
    g.add_argument("name")
    g.add_argument("text")
    g.set_defaults(func=cmd_group)

    g = sub.add_parser("let", help="define a named set in the current group")
    g.add_argument("name")
    g.add_argument("set")
    g.set_defaults(func=cmd_let)

    sub.add_parser("show", help="print the session").set_defaults(func=cmd_show)

    for name, func in (("eo", cmd_eo), ("exponent", cmd_exponent)):
        g = sub.add_parser(name)
        g.add_argument("target", nargs="?", default=None, metavar="group")
        g.set_defaults(func=func)

    g = sub.add_parser("torsion", help="the subgroup G[n]")
    g.add_argument("n", type=int)
    g.add_argument("target", nargs="?", default=None, metavar="group")
    g.set_defaults(func=cmd_torsion)

    for name, func in (
        ("closure", cmd_closure),
        ("components", cmd_components),
        ("connected", cmd_connected),
        ("dim", cmd_dim),
        ("mval", cmd_mval),
        ("dense", cmd_dense),
        ("potdense", cmd_potdense),
        ("curve", cmd_curve),
        ("irreducible", cmd_irreducible),
    ):
        g = sub.add_parser(name)
        g.add_argument("set")
        g.set_defaults(func=func)

    g = sub.add_parser("round", help="make or check round sets")
    rsub = g.add_subparsers(dest="action", required=True)
    r = rsub.add_parser("make")
    r.add_argument("n", type=int)
    r.add_argument("name", nargs="?")
    r.set_defaults(func=cmd_round)
    r = rsub.add_parser("check")
    r.add_argument("set")
    r.set_defaults(func=cmd_round)

    g = sub.add_parser("trim", help="split a round set into two halves")
    g.add_argument("set")
    g.add_argument("names", nargs="*")
    g.add_argument("--length", type=int, default=200)
    g.set_defaults(func=cmd_trim)

    g = sub.add_parser("realize", help="numeric closure through random characters")
    g.add_argument("set")
    g.add_argument("--chars", type=int, default=realization.DEFAULT_CHARACTERS)
    g.add_argument("--prefix", type=int, default=realization.DEFAULT_PREFIX)
    g.add_argument("--eps", type=float, default=realization.DEFAULT_EPS)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--truncation", type=int, default=realization.DEFAULT_TRUNCATION)
    g.add_argument("--csv", help="write image points of the targets here")
    g.set_defaults(func=cmd_realize)

    g = sub.add_parser("oracle", help="brute-force verification suites")
    osub = g.add_subparsers(dest="action", required=True)
    r = osub.add_parser("run")
    r.add_argument("--suite", action="append", choices=oracle.SUITES)
    r.add_argument("--cap", type=int, default=64)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--junit", help="also write a JUnit XML report")
    r.set_defaults(func=cmd_oracle)
    return p


def _config(session: Session, args) -> Config:
    cfg = session.config
    env_seed = os.environ.get("ZK_SEED")
    if env_seed is not None:
        cfg.seed = int(env_seed)
    for name in ("prefix_len", "count_bound", "max_transversal", "seed"):
        value = getattr(args, name, None)
        if value is not None and not (name == "seed" and args.command in ("realize", "oracle")):
            setattr(cfg, name, value)
    return cfg.validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "target", None) is not None:
        args.group = args.target
    if args.command == "oracle" and not args.suite:
        args.suite = ["coset"]
    indent = None if args.compact else 2
    code, payload = EXIT_OK, {}
    session = None
    try:
        session = Session.load(args.session)
        session.config = _config(session, args)
        result = args.func(session, args)
        payload = {"status": "ok", "result": result}
    except ParseError as err:
        code, payload = EXIT_PARSE, {"status": "parse_error", "error": str(err), "position": err.position}
    except VerificationFailed as err:
        code, payload = EXIT_VERIFY, {"status": "verification_failed", "result": err.payload}
    except realization.VerificationError as err:
        code, payload = EXIT_VERIFY, {"status": "verification_failed", "error": str(err), "result": err.report}
    except DomainError as err:
        code, payload = EXIT_DOMAIN, {"status": "domain_error", "error": str(err)}
    document = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config": asdict(session.config) if session else None,
        **payload,
    }
    print(json.dumps(document, indent=indent, sort_keys=True, default=_json_default))
    if code == EXIT_OK and args.session is not None:
        session.save(args.session)
    return code


def _json_default(value):
    if value == math.inf:
        return "inf"
    return str(value)


if __name__ == "__main__":
    sys.exit(main())
