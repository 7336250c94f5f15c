"""Command-line front end.

Exit codes: 0 success (all checks pass), 1 precondition failure or failing
checks, 2 parse/validation/usage errors.  All numeric output is exact
rationals; nothing here ever prints a float.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError, AlgebraSpec, InhomogeneousError, embed
from .algfiles import AlgebraFileError, resolve
from .brackets import canonical_bracket, standard_bracket
from .exprs import ExprSyntaxError, format_poly
from .qseries import eisenstein, evaluate
from .rrc import RRCShapeError
from .suites import SUITES, run_suite


def _eisenstein_algebra() -> AlgebraSpec:
    return AlgebraSpec(1, [("E2", 2), ("E4", 4), ("E6", 6)])


def cmd_bracket(args) -> int:
    entry = resolve(args.algebra)
    if args.n < 0:
        raise AlgebraFileError("bracket order --n must be non-negative")
    algebra = entry.full_algebra()
    f = algebra.parse(args.f)
    g = algebra.parse(args.g)
    if args.mode == "standard":
        result = standard_bracket(entry.standard_derivation(), f, g, args.n)
    else:
        from .suites import _extension_of

        ext = _extension_of(entry)
        result = canonical_bracket(
            ext.cd_ext, embed(f, ext.extended), embed(g, ext.extended), args.n
        )
    print(format_poly(result))
    return 0


def cmd_verify(args) -> int:
    system = resolve(args.algebra) if args.algebra else None
    report = run_suite(args.suite, system=system, max_n=args.max_n, order=args.order)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report)
    return 0 if report.passed else 1


def cmd_qexp(args) -> int:
    if args.order < 0:
        raise AlgebraFileError("--order must be non-negative")
    if args.series in ("E2", "E4", "E6"):
        series = eisenstein(int(args.series[1]), args.order)
    else:
        algebra = _eisenstein_algebra()
        f = algebra.parse(args.series)
        assignment = {
            "E2": eisenstein(2, args.order),
            "E4": eisenstein(4, args.order),
            "E6": eisenstein(6, args.order),
        }
        series = evaluate(f, assignment)
    lines = [f"{n} {c}" for n, c in enumerate(series.coeffs)]
    if args.compact:
        print(" / ".join(lines))
    else:
        for line in lines:
            print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcalg",
        description="Exact Rankin-Cohen algebra computations and verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="compute a Rankin-Cohen bracket")
    p.add_argument("--algebra", required=True,
                   help="builtin name or JSON definition file")
    p.add_argument("--f", required=True, help="first argument (expression)")
    p.add_argument("--g", required=True, help="second argument (expression)")
    p.add_argument("--n", required=True, type=int, help="bracket order")
    p.add_argument("--mode", choices=("standard", "canonical"),
                   default="standard")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--algebra", help="builtin name or JSON definition file")
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--order", type=int)
    p.add_argument("--json", action="store_true",
                   help="emit the machine-readable report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qexp", help="print a q-expansion")
    p.add_argument("--series", required=True,
                   help="E2, E4, E6, or an expression in them")
    p.add_argument("--order", required=True, type=int)
    p.add_argument("--compact", action="store_true",
                   help="single line instead of one coefficient per line")
    p.set_defaults(func=cmd_qexp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InhomogeneousError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (AlgebraFileError, ExprSyntaxError, AlgebraError, RRCShapeError,
            KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
