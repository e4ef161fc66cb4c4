"""Command-line driver. Exit codes: 0 all checks pass, 1 a mathematical check
failed, 2 usage, parse or validation error."""

from __future__ import annotations

import argparse
import sys

from ..errors import HopfTwistError, InvariantViolation
from ..reports import Report
from ..twist_engine import TwistSpec, check_cocycle, check_counit, phi, phi_inv, star_product
from .defs import load_defs
from .printer import print_canonical
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageExit(f"{self.prog}: error: {message}")


class _UsageExit(Exception):
    pass


def build_parser():
    p = _Parser(prog="hopftwist", description="Exact verification of Hopf algebra twists.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order_default=None):
        sp.add_argument("defs", help="definition file path or bundled name (e.g. moyal2d)")
        sp.add_argument("--order", type=int, default=order_default,
                        help="truncation order (default: the file's order)")

    sp = sub.add_parser("normalize", help="print the normal form of an expression")
    common(sp)
    sp.add_argument("expr")

    sp = sub.add_parser("star", help="cotwisted product of two expressions")
    common(sp)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--commutator", action="store_true", help="print a*b - b*a instead")

    sp = sub.add_parser("phi", help="image of an expression under phi")
    common(sp)
    sp.add_argument("expr")
    sp.add_argument("--inverse", action="store_true", help="apply phi^-1 instead")

    sp = sub.add_parser("check-cocycle", help="cocycle and counit checks for the file's twist")
    common(sp)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, order_default=4)
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=3, help="corpus monomial degree")

    sp = sub.add_parser("moyal-demo", help="end-to-end Moyal transcript")
    common(sp)
    sp.add_argument("--seed", type=int, default=0)
    return p


def _header(args, d):
    return f"command: {args.command}\ndefs: {d.name}\n"


def _run(args, out):
    if args.command == "check-cocycle":
        d = load_defs(args.defs, order=args.order, expand=False)
        if d.twist_spec is None:
            raise HopfTwistError(f"{d.name} declares no twist")
        F = d.twist_spec.expand()
        rep = Report("check-cocycle", order=d.order)
        rep.extend(check_counit(F))
        rep.extend(check_cocycle(F))
        out.write(_header(args, d) + rep.to_text())
        return EXIT_OK if rep.passed else EXIT_FAIL

    d = load_defs(args.defs, order=args.order)
    if args.command == "normalize":
        out.write(print_canonical(d.parse(args.expr)) + "\n")
        return EXIT_OK
    t = d.twist
    if t is None:
        raise HopfTwistError(f"{d.name} declares no twist")
    if args.command == "star":
        a, b = d.parse(args.a), d.parse(args.b)
        kind = type(a)
        if type(b) is not kind:
            a, b = d.module.smash.lift(a), d.module.smash.lift(b)
        r = star_product(t, d.module, a, b)
        if args.commutator:
            r = r - star_product(t, d.module, b, a)
        out.write(print_canonical(r) + "\n")
        return EXIT_OK
    if args.command == "phi":
        x = d.parse(args.expr)
        r = phi_inv(t, x, d.module) if args.inverse else phi(t, x, d.module)
        out.write(print_canonical(r) + "\n")
        return EXIT_OK
    if args.command == "verify":
        rep = run_suite(args.suite, d, seed=args.seed, max_degree=args.max_degree)
    elif args.command == "moyal-demo":
        from ..qvector_fields import moyal_demo

        if d.module is None:
            raise HopfTwistError(f"{d.name} declares no module algebra")
        rep = moyal_demo(d.module, t, seed=args.seed)
    else:  # pragma: no cover - argparse restricts the choices
        raise HopfTwistError(f"unknown command {args.command}")
    out.write(_header(args, d) + rep.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageExit as exc:
        err.write(str(exc) + "\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return _run(args, out)
    except InvariantViolation as exc:
        err.write(f"invariant violated: {exc}\n")
        return EXIT_FAIL
    except HopfTwistError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # anything unexpected still maps to a usage-class exit
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def run_cli(argv):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
