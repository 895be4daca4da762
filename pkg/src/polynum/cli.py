"""Command-line interface: ``polynum seq | decompose | verify | identity | polytope | triangulate``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .config import BudgetExceeded
from .decomposition import decompose, normalize_theorem
from .expr import ExprError, build
from .face_lattice import Polytope
from .identities import (
    ballot_path_coeffs,
    eulerian,
    generalized_eulerian_row,
    lattice_path_coeffs,
    macmahon_box,
    narayana,
    stirling2,
    young_poly_coeffs,
    young_tableaux_count,
)
from .numbers import NumberEngine, bfile, sequence_json
from .triangulation import (
    GenericFunctional,
    assign_apexes,
    build_triangulation,
    triangulation_shelling,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _polytope(text: str) -> Polytope:
    try:
        return build(text)
    except ExprError as exc:
        raise UsageError(str(exc)) from None


def _functional(P: Polytope, text: str | None) -> GenericFunctional:
    if text is None:
        return GenericFunctional.default(P.ambient_dim)
    try:
        f = GenericFunctional.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad functional {text!r}: {exc}") from None
    if len(f.base) != P.ambient_dim:
        raise UsageError(
            f"functional has {len(f.base)} entries but {P.name} lives in dimension {P.ambient_dim}"
        )
    return f


def _dump(doc) -> str:
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def cmd_seq(args) -> int:
    P = _polytope(args.expr)
    engine = NumberEngine(P, assign_apexes(P, _functional(P, args.functional)))
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    values = engine.sequence(args.n)
    interior = engine.interior_sequence(args.n) if args.interior else None
    if args.format == "plain":
        print(" ".join(map(str, values)))
        if interior is not None:
            print(" ".join(map(str, interior)))
    elif args.format == "bfile":
        sys.stdout.write(bfile(interior if interior is not None else values))
    elif args.format == "csv":
        header = "n,value" + (",interior" if interior is not None else "")
        print(header)
        for n, v in enumerate(values):
            print(f"{n},{v}" + (f",{interior[n]}" if interior is not None else ""))
    else:
        print(sequence_json(P.name, P.dim, values, interior))
    return EXIT_OK


def cmd_decompose(args) -> int:
    P = _polytope(args.expr)
    try:
        theorem = normalize_theorem(args.theorem)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.method == "solve" and theorem not in ("T1", "T2", "T31"):
        raise UsageError(f"no solve path for theorem {args.theorem}")
    if P.dim < 1:
        raise UsageError("decompositions need a polytope of dimension >= 1")
    A = assign_apexes(P, _functional(P, args.functional))
    T = build_triangulation(P, A)
    form = decompose(T, theorem, args.method)
    engine = NumberEngine(P, A)
    d = P.dim
    n_range = range(0, 2 * d + 3)
    bad = [n for n in n_range if form.evaluate(n) != engine.number(P.lattice.top, n)]
    status = EXIT_OK
    doc = form.to_json([n_range.start, n_range.stop - 1] if not bad else None)
    if bad:
        doc["mismatch_at"] = bad
        status = EXIT_FAIL
    if args.check and theorem in ("T1", "T2", "T31"):
        other = decompose(T, theorem, "solve" if args.method == "count" else "count")
        doc["check"] = {"agree": other.coeffs == form.coeffs, "other": list(other.coeffs)}
        if other.coeffs != form.coeffs:
            status = EXIT_FAIL
    print(_dump(doc))
    return status


def cmd_verify(args) -> int:
    try:
        checks = run_suite(args.suite, args.max_d, args.expr)
    except ExprError as exc:
        raise UsageError(str(exc)) from None
    failed = [c for c in checks if not c.passed]
    report = {
        "suite": args.suite,
        "passed": not failed,
        "checks": {c.name: {"passed": c.passed, "detail": c.detail} for c in checks},
    }
    print(_dump(report))
    for c in failed:
        print(f"FAIL {c.name}: {c.detail}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def cmd_identity(args) -> int:
    p = args.params
    try:
        if args.name == "eulerian":
            (d,) = p
            doc = [eulerian(int(d), i) for i in range(max(int(d), 1))]
        elif args.name == "generalized-eulerian":
            doc = list(generalized_eulerian_row(_int_list(p[0])).counts)
        elif args.name == "stirling2":
            d, r = map(int, p)
            doc = stirling2(d, r)
        elif args.name == "narayana":
            d1, k = map(int, p)
            doc = narayana(d1, k)
        elif args.name == "macmahon":
            a, b, c = map(int, p)
            doc = macmahon_box(a, b, c)
        elif args.name == "young":
            l, m = map(int, p)
            doc = {"count": young_tableaux_count(l, m), "descents": list(young_poly_coeffs(l, m).counts)}
        elif args.name == "ballot":
            d1, d2 = map(int, p)
            doc = list(ballot_path_coeffs(d1, d2).counts)
        else:
            doc = list(lattice_path_coeffs(_int_list(p[0])).counts)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"identity {args.name}: {exc}") from None
    print(_dump(doc))
    return EXIT_OK


def cmd_polytope(args) -> int:
    P = _polytope(args.expr)
    print(P.dumps())
    return EXIT_OK


def cmd_triangulate(args) -> int:
    P = _polytope(args.expr)
    T = build_triangulation(P, assign_apexes(P, _functional(P, args.functional)))
    shelling = triangulation_shelling(T) if args.shelling else None
    print(_dump(T.to_json(shelling)))
    return EXIT_OK


IDENTITIES = ("eulerian", "generalized-eulerian", "stirling2", "narayana", "macmahon", "young", "ballot", "paths")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polynum", description="Exact polytope numbers and their decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print P(0..n)")
    p.add_argument("expr")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--interior", action="store_true")
    p.add_argument("--format", choices=("plain", "bfile", "csv", "json"), default="plain")
    p.add_argument("--functional")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("decompose", help="print a decomposition form as JSON")
    p.add_argument("expr")
    p.add_argument("--theorem", required=True, choices=("1", "2", "3-1", "3-2", "4"))
    p.add_argument("--method", choices=("count", "solve"), default="count")
    p.add_argument("--check", action="store_true")
    p.add_argument("--functional")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--max-d", type=int)
    p.add_argument("--expr")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity", help="evaluate a combinatorial identity")
    p.add_argument("name", choices=IDENTITIES)
    p.add_argument("params", nargs="+")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("polytope", help="print a polytope as JSON")
    p.add_argument("expr")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("triangulate", help="print the pointed triangulation as JSON")
    p.add_argument("expr")
    p.add_argument("--shelling", action="store_true")
    p.add_argument("--functional")
    p.set_defaults(func=cmd_triangulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"polynum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"polynum: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
