"""Command-line surface: check, classify, linearize, catalog, enumerate, belousov.

Exit-code contract: 0 the property holds, 1 it fails, 2 input or usage error.
Reports are JSON with sorted keys; stdout carries only the report or stream.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .abelian import canonical_form
from .enumeration import EnumerationSpec, census_pairs, census_single, run_spec
from .equations import (catalog_entry, is_belousov, pair_catalog,
                        parse_equation, satisfies, single_catalog)
from .errors import MedialqError
from .linearize import (LinearizationError, PairLinearRep, linearize_pair,
                        linearize_single, verify_relations)
from .tables import QuasigroupTable, check_property, validate_table


def read_table_file(path: str) -> QuasigroupTable:
    """Parse the TableFile format: first line n, then n rows of n integers.

    Lines starting with '#' are comments; an optional 'labels: ...' header is
    accepted (display names apply on output only, never in the core).
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    data = [ln for ln in lines
            if ln and not ln.startswith("#") and not ln.startswith("labels:")]
    if not data:
        raise MedialqError(f"{path}: empty table file")
    try:
        n = int(data[0])
    except ValueError:
        raise MedialqError(f"{path}: first line must be the order") from None
    if len(data) < n + 1:
        raise MedialqError(f"{path}: expected {n} rows, found {len(data) - 1}")
    rows = []
    for ln in data[1:n + 1]:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError:
            raise MedialqError(f"{path}: non-integer table entry") from None
    return validate_table(rows)


def format_table(q: QuasigroupTable) -> str:
    lines = [str(q.order)]
    lines.extend(" ".join(str(v) for v in row) for row in q.cells)
    return "\n".join(lines) + "\n"


def _digest(q: QuasigroupTable) -> str:
    return hashlib.sha256(format_table(q).encode()).hexdigest()[:16]


def _emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True, indent=2))


def _counterexample_dict(cx) -> dict:
    return {
        "assignment": {var: val for var, val in cx.assignment},
        "lhs_value": cx.lhs_value,
        "rhs_value": cx.rhs_value,
    }


def _rep_dict(rep) -> dict:
    return {
        "group_canonical": canonical_form(rep.group),
        "group_identity": rep.group.identity,
        "phi": list(rep.phi.map.images),
        "psi": list(rep.psi.map.images),
        "c": rep.c,
    }


def _relation_text(rel) -> str:
    (a, b), (c, d) = rel
    return f"{a}*{b}={c}*{d}"


def _relation_check_dict(check) -> dict:
    return {
        "relations": [
            {"relation": _relation_text(rel), "rl": rl, "lr": lr}
            for rel, rl, lr in zip(check.relations, check.rl, check.lr)
        ],
        "holds_rl": check.holds_rl,
        "holds_lr": check.holds_lr,
        "conventions": list(check.conventions),
    }


def _resolve_equation(args):
    if getattr(args, "label", None):
        entry = catalog_entry(args.label)
        return entry.equation, entry.label
    return parse_equation(args.equation), None


def cmd_check(args) -> int:
    table = read_table_file(args.table)
    eq, label = _resolve_equation(args)
    inputs = {"table": _digest(table)}
    bindings = {}
    if len(eq.ops) == 1:
        bindings[eq.ops[0]] = table
    elif len(eq.ops) == 2:
        if not args.table2:
            raise MedialqError("equation uses two operations; pass --table2")
        table2 = read_table_file(args.table2)
        bindings[eq.ops[0]] = table
        bindings[eq.ops[1]] = table2
        inputs["table2"] = _digest(table2)
    else:
        raise MedialqError("check supports at most two operation symbols")
    result = satisfies(eq, bindings)
    report = {
        "command": "check",
        "equation": eq.text,
        "label": label,
        "inputs": inputs,
        "satisfied": result is True,
        "counterexample": None if result is True else _counterexample_dict(result),
    }
    _emit(report)
    return 0 if result is True else 1


def cmd_classify(args) -> int:
    q = read_table_file(args.table)
    sat = {}
    for entry in single_catalog():
        sat[entry.label] = satisfies(entry.equation, {"f": q}) is True
    properties = {p: check_property(q, p)
                  for p in ("commutative", "associative", "idempotent")}
    try:
        rep = linearize_single(q, args.base_element)
    except LinearizationError as exc:
        linearization = {"ok": False, "failure": str(exc)}
    else:
        linearization = {"ok": True, "representation": _rep_dict(rep)}
    _emit({
        "command": "classify",
        "inputs": {"table": _digest(q)},
        "satisfaction": sat,
        "properties": properties,
        "linearization": linearization,
    })
    return 0


def cmd_linearize(args) -> int:
    f = read_table_file(args.table)
    report = {"command": "linearize",
              "inputs": {"table": _digest(f)},
              "base_element": args.base_element}
    try:
        if args.table2:
            g = read_table_file(args.table2)
            report["inputs"]["table2"] = _digest(g)
            pair = linearize_pair(f, g, args.base_element)
            report["representation"] = {"f": _rep_dict(pair.rep_f),
                                        "g": _rep_dict(pair.rep_g)}
        else:
            rep = linearize_single(f, args.base_element)
            pair = PairLinearRep(group=rep.group, rep_f=rep, rep_g=rep)
            report["representation"] = {"f": _rep_dict(rep)}
    except LinearizationError as exc:
        report["ok"] = False
        report["failure"] = str(exc)
        _emit(report)
        return 1
    report["ok"] = True
    if args.relations:
        entry = catalog_entry(args.relations)
        if entry.relations is None:
            raise MedialqError(
                f"catalog entry {entry.label} carries no relation set")
        report["relations"] = _relation_check_dict(
            verify_relations(pair, entry.relations))
    _emit(report)
    return 0


def cmd_catalog(args) -> int:
    entries = pair_catalog() if args.pairs else single_catalog()
    for e in entries:
        cols = [e.label,
                "belousov" if e.belousov else "non-belousov",
                e.classification,
                e.equation.text]
        if e.relations is not None:
            cols.append("; ".join(_relation_text(r) for r in e.relations))
        print("\t".join(cols))
    return 0


def cmd_enumerate(args) -> int:
    equation = None
    if args.label:
        equation = catalog_entry(args.label).equation
    elif args.equation:
        equation = parse_equation(args.equation)
    if equation is not None and len(equation.ops) != 1:
        raise MedialqError("enumeration filters take single-operation equations")
    if args.census:
        entries = None
        counts = census_single(args.order, entries, force=args.force)
        _emit({"command": "enumerate", "order": args.order, "census": counts})
        return 0
    if args.count_only:
        spec = EnumerationSpec(order=args.order, equation=equation,
                               mode="count", force=args.force)
        _emit({"command": "enumerate", "order": args.order,
               "count": run_spec(spec)})
        return 0
    spec = EnumerationSpec(order=args.order, equation=equation,
                           mode="stream", force=args.force)
    first = True
    for q in run_spec(spec):
        if not first:
            print()
        sys.stdout.write(format_table(q))
        first = False
    return 0


def cmd_belousov(args) -> int:
    eq = parse_equation(args.equation)
    flag = is_belousov(eq)
    _emit({"command": "belousov", "equation": eq.text, "belousov": flag})
    return 0 if flag else 1


def cmd_census_pairs(args) -> int:
    rows = census_pairs(args.order, force=args.force)
    _emit({
        "command": "census-pairs",
        "order": args.order,
        "census": {label: {"count": r.count,
                           "commutative_pairs": r.commutative_pairs,
                           "linear_pairs": r.linear_pairs}
                   for label, r in rows.items()},
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="medialq",
        description="Analyze finite quasigroups against the balanced "
                    "medial-like equation catalogs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check an equation on concrete tables")
    p.add_argument("--table", required=True)
    p.add_argument("--table2")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--equation")
    grp.add_argument("--label")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="full single-catalog profile of one table")
    p.add_argument("--table", required=True)
    p.add_argument("--base-element", type=int, default=0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("linearize", help="construct a linear representation")
    p.add_argument("--table", required=True)
    p.add_argument("--table2")
    p.add_argument("--base-element", type=int, default=0)
    p.add_argument("--relations", metavar="LABEL")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("catalog", help="list a 24-equation catalog")
    p.add_argument("--pairs", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("enumerate", help="enumerate Latin squares of one order")
    p.add_argument("--order", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--label")
    grp.add_argument("--equation")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count-only", action="store_true")
    mode.add_argument("--census", action="store_true")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census-pairs", help="pair-catalog census over ordered pairs")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_census_pairs)

    p = sub.add_parser("belousov", help="test whether an equation is Belousov")
    p.add_argument("--equation", required=True)
    p.set_defaults(func=cmd_belousov)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MedialqError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
