"""Command-line front end.

Exit status: 0 when the query is answered affirmatively (valid, model found,
no violations), 1 when answered negatively, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import principles as _principles
from . import search, semantics, topology
from .formula import ParseError, parse, render
from .topology import DEFAULT_CAP, CapExceeded, FiniteSpace

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_space(arg: str, cap: int = DEFAULT_CAP) -> FiniteSpace:
    """Built-in name, path to a JSON space file, or inline JSON (object or subbase list)."""
    text = arg.strip()
    if text.startswith("{") or text.startswith("["):
        data = json.loads(text)
        if isinstance(data, list):
            data = {"subbase": data}
        return topology.load_space(data, cap=cap)
    try:
        return topology.builtin(text, cap=cap)
    except KeyError:
        pass
    path = Path(text)
    if path.is_file():
        return topology.load_space(json.loads(path.read_text("utf-8")), cap=cap)
    raise UsageError(f"unknown space {arg!r}: not a built-in name, file or inline JSON")


_BINDING = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*\{([^}]*)\}\s*$")


def parse_valuation(space: FiniteSpace, text: str) -> semantics.Valuation:
    """``P={1,2};Q={1,3}`` with labels of ``space``."""
    assignment = {}
    for part in filter(str.strip, text.split(";")):
        m = _BINDING.match(part)
        if not m:
            raise UsageError(f"bad valuation entry {part.strip()!r}; expected NAME={{labels}}")
        labels = [x.strip() for x in m.group(2).split(",") if x.strip()]
        assignment[m.group(1)] = space.mask(labels)
    return semantics.Valuation(space, assignment)


def _principle(arg: str, entries):
    try:
        return _principles.lookup(arg, entries)
    except KeyError:
        pass
    try:
        schema = parse(arg)
    except ParseError:
        raise UsageError(f"unknown principle {arg!r} (and not a formula)") from None
    return _principles.Principle(id=arg, schema=schema, eq_class="unclassified")


def _ids(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()] if text else []


def _space_json(space: FiniteSpace) -> dict:
    out = space.to_json()
    out["code"] = space.canonical_form().hex()
    return out


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# --------------------------------------------------------------------------
# Commands

def cmd_eval(args, entries):
    space = resolve_space(args.space, args.cap)
    valuation = parse_valuation(space, args.valuation)
    f = parse(args.formula)
    value = semantics.eval(space, valuation, f)
    forced = value == space.full
    _emit(args, {"formula": render(f), "value": space.labels(value), "forced": forced},
          [space.format_set(value)])
    return EXIT_YES if forced else EXIT_NO


def _report_line(space, pid, report):
    if report.kind == semantics.VALIDATES:
        return f"{pid}: validates"
    return (f"{pid}: {report.kind} counterexample, witnesses {report.witness.format()}, "
            f"⟦·⟧={space.format_set(report.truth_set)}")


def cmd_check(args, entries):
    space = resolve_space(args.space, args.cap)
    results, lines = [], []
    for arg in args.principles:
        p = _principle(arg, entries)
        report = semantics.counterexample_kind(space, p, witness_order=args.witness_order)
        entry = {"id": p.id, "kind": report.kind}
        if report.witness is not None:
            entry["witness"] = report.witness.to_json()
            entry["truth_set"] = space.labels(report.truth_set)
        results.append(entry)
        lines.append(_report_line(space, p.id, report))
    _emit(args, {"space": _space_json(space), "results": results}, lines)
    return EXIT_YES if all(r["kind"] == semantics.VALIDATES for r in results) else EXIT_NO


def cmd_separate(args, entries):
    result = search.find_separating_model(
        _ids(args.validate), _ids(args.refute), args.max, strong=args.strong,
        entries=entries, jobs=args.jobs, cap=args.cap)
    if result.found:
        sp = result.space
        lines = [f"found n={sp.n}: opens " + " ".join(sp.format_set(u) for u in sp.opens)]
        lines += [f"validates {pid}" for pid in result.validated]
        lines += [f"refutes {pid}: {w.format()}, ⟦·⟧={sp.format_set(t)}"
                  for pid, w, t in result.refuted]
    else:
        lines = [f"no separating model with at most {args.max} points "
                 f"({result.stats['spaces_examined']} spaces examined)"]
    _emit(args, result.to_json(), lines)
    return EXIT_YES if result.found else EXIT_NO


def cmd_profile(args, entries):
    space = resolve_space(args.space, args.cap)
    prof = search.profile(space, entries)
    _emit(args, {"code": prof.code.hex(), "profile": prof.as_dict()},
          [f"{pid}: {'valid' if ok else 'refuted'}" for pid, ok in zip(prof.ids, prof.vector)])
    return EXIT_YES


def cmd_enumerate(args, entries):
    count = 0
    for space in topology.enumerate_spaces(args.n, args.up_to_homeo, cap=args.cap):
        count += 1
        if args.format == "json":
            print(json.dumps(_space_json(space), sort_keys=True))
        else:
            print(" ".join(space.format_set(u) for u in space.opens))
    if args.format != "json":
        print(f"# {count} spaces", file=sys.stderr)
    return EXIT_YES


def cmd_survey(args, entries):
    result = search.survey(args.max, entries=entries, jobs=args.jobs, cap=args.cap)
    if args.dot:
        Path(args.dot).write_text(result.to_dot(), "utf-8")
    if args.format == "dot":
        sys.stdout.write(result.to_dot())
        return EXIT_YES
    lines = []
    for (a, b), sep in result.separations.items():
        if sep is None:
            lines.append(f"{a} => {b}: no countermodel with at most {args.max} points")
        else:
            lines.append(f"{a} =/=> {b}: witness at n={sep.space.n}, opens "
                         + " ".join(sep.space.format_set(u) for u in sep.space.opens))
    lines.append("hasse: " + ", ".join(f"{a} -> {b}" for a, b in result.hasse_edges()))
    _emit(args, result.to_json(), lines)
    return EXIT_YES


def cmd_verify_classes(args, entries):
    report = search.verify_equivalence_classes(args.max, entries=entries, jobs=args.jobs,
                                               cap=args.cap)
    lines = [f"{report.spaces_checked} spaces, {len(report.violations)} violations"]
    for v in report.violations:
        lines.append(f"  {v.eq_class} on opens "
                     + " ".join(v.space.format_set(u) for u in v.space.opens) + f": {v.results}")
    _emit(args, report.to_json(), lines)
    return EXIT_YES if report.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--jobs", type=int, default=search.default_jobs(),
                        help="worker processes (default: $TOPOMODELS_JOBS or 1)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help=f"point cap (default {DEFAULT_CAP}, at most {topology.HARD_CAP})")
    common.add_argument("--catalog", help="principle manifest (JSON) replacing the built-in one")

    parser = _Parser(prog="topomodels", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="truth value of a formula")
    p.add_argument("space")
    p.add_argument("valuation", help="e.g. 'P={1,2};Q={1,3}'")
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common], help="validity of principles on a space")
    p.add_argument("space")
    p.add_argument("principles", nargs="+", help="catalog ids or schema formulas")
    p.add_argument("--witness-order", choices=("first", "smallest"), default="first")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("separate", parents=[common], help="find a separating model")
    p.add_argument("--validate", default="")
    p.add_argument("--refute", default="")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--strong", action="store_true", help="require strong counterexamples")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("profile", parents=[common], help="validity of every catalog entry")
    p.add_argument("space")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("enumerate", parents=[common], help="list topologies on N points")
    p.add_argument("n", type=int)
    p.add_argument("--up-to-homeo", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("survey", parents=[common], help="empirical implication survey")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--dot", metavar="FILE", help="also write the Hasse diagram as DOT")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify-classes", parents=[common], help="check equivalence classes")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_verify_classes)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        topology.check_cap(0, args.cap)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        entries = _principles.load_catalog(args.catalog) if args.catalog else None
        return args.func(args, entries)
    except (UsageError, ParseError, CapExceeded, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"topomodels: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
