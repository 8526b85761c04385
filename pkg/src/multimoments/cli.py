"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from . import oracle, symbolic
from .errata import format_errata
from .numeric import (
    MultinomialParams,
    central_moment,
    factorial_moment,
    noncentral_moment,
    to_rational,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _uint(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _uint64(text: str) -> int:
    value = _uint(text)
    if value >= 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {text!r}")
    return value


def _uint_list(text: str) -> tuple[int, ...]:
    return tuple(_uint(part) for part in text.split(","))


def _rational_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(to_rational(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _params(args) -> MultinomialParams:
    # raises SimplexError with the offending sum
    return MultinomialParams(args.m, args.x)


def _decimal(value: Fraction, places: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(28, places + len(str(abs(value.numerator))) + 5)
        q = Decimal(value.numerator) / Decimal(value.denominator)
        return str(q.quantize(Decimal(1).scaleb(-places)))


def _cmd_moment(args, out) -> int:
    params = _params(args)
    if args.factorial:
        value = factorial_moment(params, args.p)
    elif args.central:
        value = central_moment(params, args.p)
    else:
        value = noncentral_moment(params, args.p)
    print(value, file=out)
    if args.decimal is not None:
        print(f"{_decimal(value, args.decimal)} (approximate)", file=out)
    return EXIT_OK


def _poly(pattern, central: bool, ordinary: bool) -> symbolic.MomentPoly:
    poly = symbolic.symbolic_central(pattern) if central else symbolic.symbolic_noncentral(pattern)
    return symbolic.to_ordinary(poly) if ordinary else poly


def _label(pattern: Sequence[int], central: bool, latex: bool) -> str:
    factors = []
    for i, p in enumerate(pattern, 1):
        if latex:
            base = rf"\xi_{{{i}}}" if not central else rf"(\xi_{{{i}}} - m x_{{{i}}})"
            factors.append(base if p == 1 else f"{base}^{{{p}}}")
        else:
            base = f"xi{i}" if not central else f"(xi{i} - m x{i})"
            factors.append(base if p == 1 else f"{base}^{p}")
    if latex:
        return r"\mathbb{E}[" + " ".join(factors) + "]"
    return "E[" + " ".join(factors) + "]"


def _cmd_formula(args, out) -> int:
    pattern = symbolic.canonical_pattern(args.p)
    poly = _poly(pattern, args.central, args.ordinary)
    print(symbolic.render(poly, args.format), file=out)
    return EXIT_OK


def _cmd_catalog(args, out) -> int:
    if args.paper_errata:
        print(format_errata(), file=out)
        return EXIT_OK
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    for pattern, poly in symbolic.catalog(args.order, central=args.central):
        if args.ordinary:
            poly = symbolic.to_ordinary(poly)
        if args.format == "json":
            print(poly.to_json(), file=out)
        elif args.format == "latex":
            print(f"{_label(pattern, args.central, True)} &= {symbolic.render(poly, 'latex')} \\\\", file=out)
        else:
            print(f"{_label(pattern, args.central, False)} = {symbolic.render(poly)}", file=out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    reports = oracle.verify_sweep(args.max_m, args.dims, args.order, workers=args.workers)
    failures = [r for r in reports if not r.passed]
    if args.format == "json":
        for r in reports:
            print(r.to_json(), file=out)
    else:
        for r in failures:
            print(f"FAIL {r.to_json()}", file=out)
        print(f"{len(reports)} checks, {len(failures)} failures", file=out)
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def _cmd_sample(args, out) -> int:
    params = _params(args)
    mode = "central" if args.central else "noncentral"
    est = oracle.sample_moment(params, args.p, mode, n=args.n, seed=args.seed)
    if args.format == "json":
        print(json.dumps({"mean": est.mean, "standard_error": est.standard_error,
                          "n_samples": est.n_samples, "seed": est.seed},
                         separators=(",", ":")), file=out)
    else:
        print(f"mean {est.mean!r} se {est.standard_error!r} n {est.n_samples} seed {est.seed}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multimoments", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    moment = sub.add_parser("moment", help="exact moment for concrete m and x")
    moment.add_argument("--m", type=_uint, required=True)
    moment.add_argument("--x", type=_rational_list, required=True)
    moment.add_argument("--p", type=_uint_list, required=True)
    kind = moment.add_mutually_exclusive_group()
    kind.add_argument("--central", action="store_true")
    kind.add_argument("--factorial", action="store_true")
    moment.add_argument("--decimal", type=_uint, metavar="N",
                        help="also print a rounded decimal with N places")
    moment.set_defaults(func=_cmd_moment)

    formula = sub.add_parser("formula", help="closed form for one exponent pattern")
    formula.add_argument("--p", type=_uint_list, required=True)
    formula.add_argument("--central", action="store_true")
    formula.add_argument("--format", choices=("text", "latex", "json"), default="text")
    formula.add_argument("--ordinary", action="store_true",
                         help="expand falling factorials of m into ordinary powers")
    formula.set_defaults(func=_cmd_formula)

    cat = sub.add_parser("catalog", help="closed forms for every pattern up to an order")
    cat.add_argument("--order", type=_uint, default=4)
    cat.add_argument("--central", action="store_true")
    cat.add_argument("--format", choices=("text", "latex", "json"), default="text")
    cat.add_argument("--ordinary", action="store_true")
    cat.add_argument("--paper-errata", action="store_true",
                     help="list known misprints in the published order-8 table")
    cat.set_defaults(func=_cmd_catalog)

    verify = sub.add_parser("verify", help="cross-check formulas against exact enumeration")
    verify.add_argument("--max-m", type=_uint, default=6)
    verify.add_argument("--dims", type=_uint_list, default=(1, 2, 3))
    verify.add_argument("--order", type=_uint, default=4)
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--workers", type=_uint, default=1)
    verify.set_defaults(func=_cmd_verify)

    sample = sub.add_parser("sample", help="Monte Carlo estimate of a moment")
    sample.add_argument("--m", type=_uint, required=True)
    sample.add_argument("--x", type=_rational_list, required=True)
    sample.add_argument("--p", type=_uint_list, required=True)
    sample.add_argument("--central", action="store_true")
    sample.add_argument("--n", type=_uint, default=10**6)
    sample.add_argument("--seed", type=_uint64, default=0)
    sample.add_argument("--format", choices=("text", "json"), default="text")
    sample.set_defaults(func=_cmd_sample)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_INVALID
    except (ValueError, TypeError, oracle.EnumerationTooLarge) as exc:
        print(f"multimoments: error: {exc}", file=err)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
