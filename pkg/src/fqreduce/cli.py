"""Command-line entry point.

Exit codes: 0 success, 1 parse or usage error, 2 violated precondition
(non-monic, not squarefree where required, m out of range), 3 oracle or
validation failure.  Diagnostics go to stderr only.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bench import PROBLEMS, bench_fit, run_bench, write_csv
from .carlitz import carlitz_charpoly
from .determinants import moore_zero_test, vandermonde_det
from .errors import (
    BadInput, DegenerateDifference, FqReduceError, NotMonic, NotPrime, NotSquarefree, ParseError,
    TooLarge,
)
from .factor import factor, factor_degree_ref, trial_factor
from .field import PrimeField, Rng
from .frobenius import frob_charpoly, frob_minpoly
from .poly import Factorization, ModCtx, check_squarefree, random_monic_squarefree, random_poly, \
    squarefree_decompose
from .reductions import (
    OracleSet, factor_degree_via_carlitz, factor_degree_via_determinant,
    reduce_factor_via_factordegree, reduce_factor_via_frobminpoly,
)
from .textio import format_factorization, format_poly, parse_poly

EPILOG = """environment:
  FQREDUCE_SEED     default seed when --seed is not given (else 0)
  FQREDUCE_BACKEND  kernel backend, numba (default) or numpy

input is one line "q=<prime> f=<c0>,<c1>,...,<cn>" on stdin or in --in FILE.
exit codes: 0 ok, 1 parse/usage, 2 precondition, 3 oracle/validation failure."""

PRECONDITION = (NotMonic, NotSquarefree, BadInput, TooLarge)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FQREDUCE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"FQREDUCE_SEED is not an integer: {env!r}") from None


def _read_poly(args):
    if args.infile:
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    f = parse_poly(text)
    if not f.is_monic():
        raise NotMonic("input polynomial must be monic")
    if f.deg < 1:
        raise BadInput("input polynomial must be nonconstant")
    return f


def _squarefree_input(args):
    f = _read_poly(args)
    check_squarefree(f)
    return f


# -- subcommands ---------------------------------------------------------------


def cmd_factor(args):
    f = _read_poly(args)
    rng = Rng(_seed(args))
    if args.via == "reference":
        print(format_factorization(factor(f, rng)))
        return 0
    fallback = False
    found = []
    for g, e in squarefree_decompose(f):
        if args.via == "frobminpoly":
            oracles = (OracleSet.independent if args.oracle == "independent" else OracleSet.reference)(rng.child())
            stats = {}
            fac = reduce_factor_via_frobminpoly(g, oracles.frob_minpoly, rng, stats)
            fallback |= stats.get("fallback", False)
        else:
            if args.oracle == "independent":
                def oracle(h):
                    return factor_degree_via_determinant(h, "moore")
            else:
                oracle = factor_degree_ref
            fac = reduce_factor_via_factordegree(g, oracle, rng=rng)
        found.extend((h, e) for h, _ in fac)
    print(format_factorization(Factorization(f.field, tuple(found))))
    if fallback:
        raise _Exit(3, "FallbackUsed: the reduction fell back to the reference engine")
    return 0


def cmd_factor_degree(args):
    f = _squarefree_input(args)
    if args.via == "ddf":
        print(factor_degree_ref(f))
    elif args.via == "carlitz":
        d, ok = factor_degree_via_carlitz(f)
        print(f"{d} {'VALIDATED' if ok else 'UNVALIDATED'}")
        if not ok:
            raise _Exit(3, "UNVALIDATED: p may divide the number of smallest-degree factors")
    else:
        print(factor_degree_via_determinant(f, args.via))
    return 0


def cmd_frob_minpoly(args):
    f = _squarefree_input(args)
    print(format_poly(frob_minpoly(ModCtx(f), Rng(_seed(args)), mode=args.mode)))
    return 0


def cmd_frob_charpoly(args):
    f = _squarefree_input(args)
    print(format_poly(frob_charpoly(ModCtx(f), mode=args.mode, rng=Rng(_seed(args)))))
    return 0


def cmd_carlitz_charpoly(args):
    f = _squarefree_input(args)
    if args.mode == "direct":
        chi = carlitz_charpoly(f, "direct")
    else:
        chi = carlitz_charpoly(f, "from_factors", factor(f, Rng(_seed(args))))
    print(format_poly(chi))
    return 0


def _check_m(f, m):
    if m < 1 or m > f.deg:
        raise BadInput(f"--m must lie in [1, {f.deg}]")


def cmd_moore_det(args):
    f = _squarefree_input(args)
    _check_m(f, args.m)
    print("ZERO" if moore_zero_test(ModCtx(f), args.m) else "NONZERO")
    return 0


def cmd_vandermonde_det(args):
    f = _squarefree_input(args)
    _check_m(f, args.m)
    v = vandermonde_det(ModCtx(f), args.m)
    print("ZERO" if v.is_zero() else "NONZERO")
    print(format_poly(v))
    return 0


def cmd_gen(args):
    try:
        field = PrimeField(args.q)
    except NotPrime as exc:
        raise ParseError(str(exc)) from exc
    if args.deg < 1:
        raise BadInput("--deg must be >= 1")
    rng = Rng(_seed(args))
    f = random_poly(args.deg, field, rng) if args.any else random_monic_squarefree(args.deg, field, rng)
    print(format_poly(f))
    return 0


def cmd_bench(args):
    records = run_bench(args.problem, args.q_list, args.n_list, args.reps, _seed(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    try:
        fits = bench_fit(records)
    except FqReduceError as exc:
        print(f"fit skipped: {exc}", file=sys.stderr)
        return 0
    for fit in fits.values():
        print(f"q={fit.q} slope={fit.slope:.3f} intercept={fit.intercept:.3f} "
              f"r2={fit.r2:.4f} points={fit.points}", file=sys.stderr)
    return 0


def selftest(out=None) -> bool:
    """Exhaustive small-field checks: factor against trial division, and the
    Frobenius and Carlitz polynomials against the factor degrees."""
    import itertools

    from .poly import Poly

    out = out or sys.stdout
    ok = True
    rng = Rng(0)
    for q, top in ((2, 6), (3, 4), (5, 3)):
        field = PrimeField(q)
        count = bad = 0
        for d in range(1, top + 1):
            for tail in itertools.product(range(q), repeat=d):
                f = Poly(field, list(tail) + [1])
                count += 1
                fac = factor(f, rng)
                good = fac == trial_factor(f)
                if good and fac.is_squarefree():
                    ctx = ModCtx(f)
                    good = frob_minpoly(ctx, rng) == frob_minpoly(ctx, rng, mode="reference") \
                        and carlitz_charpoly(f, "direct") == carlitz_charpoly(f, "from_factors", fac)
                bad += not good
        ok &= bad == 0
        print(f"q={q} deg<={top}: {count} polynomials, {bad} mismatches", file=out)
    print("selftest " + ("passed" if ok else "FAILED"), file=out)
    return ok


def cmd_selftest(args):
    if not selftest():
        raise _Exit(3, "selftest failed")
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fqreduce", description="Factoring reductions over prime fields.",
                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--in", dest="infile", metavar="FILE", help="read input from FILE instead of stdin")
    common.add_argument("--seed", type=int, help="random seed (default: $FQREDUCE_SEED or 0)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factor", parents=[common], help="complete factorization")
    p.add_argument("--via", choices=("reference", "frobminpoly", "factordegree"), default="reference")
    p.add_argument("--oracle", choices=("reference", "independent"), default="independent")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("factor-degree", parents=[common],
                       help="an irreducible factor degree (ddf, carlitz: smallest; moore, vandermonde: largest)")
    p.add_argument("--via", choices=("ddf", "carlitz", "moore", "vandermonde"), default="ddf")
    p.set_defaults(func=cmd_factor_degree)

    for name, func, modes in (("frob-minpoly", cmd_frob_minpoly, ("independent", "reference")),
                              ("frob-charpoly", cmd_frob_charpoly, ("independent", "reference")),
                              ("carlitz-charpoly", cmd_carlitz_charpoly, ("direct", "from_factors"))):
        p = sub.add_parser(name, parents=[common], help=f"{name.replace('-', ' ')} of F_q[x]/(f)")
        p.add_argument("--mode", choices=modes, default=modes[0])
        p.set_defaults(func=func)

    for name, func in (("moore-det", cmd_moore_det), ("vandermonde-det", cmd_vandermonde_det)):
        p = sub.add_parser(name, parents=[common], help=f"{name.split('-')[0]} determinant zero test mod f")
        p.add_argument("--m", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("gen", help="random monic squarefree polynomial")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--any", action="store_true", help="any monic polynomial, not only squarefree")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing CSV plus log-log slope fit on stderr")
    p.add_argument("--problem", choices=sorted(PROBLEMS), required=True)
    p.add_argument("--q-list", type=int, nargs="+", required=True)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="FILE", help="write CSV to FILE instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="run the embedded exhaustive suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if str(exc):
            print(str(exc), file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except PRECONDITION as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return 2
    except DegenerateDifference as exc:
        print(f"UNVALIDATED: {exc}", file=sys.stderr)
        return 3
    except FqReduceError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
