"""Command-line interface.

Subcommands (d and q positional; with --raw B the pair is read as the
action (d; q, B) and normalized first):

* ``info d q``             resolution data, Q matrix, discrepancy
* ``table d q``            the full Delta table, k = 0..d-1
* ``class d q k``          one class report
* ``germ d q POLY``        parse a germ: class, genericity, mu, valuations
* ``newton d q k [--germ POLY] --svg PATH``   render polygons
* ``check d q [--dmax N]`` run the identity suite (N sweeps all types)
* ``reconstruct N/D N/D``  recover (d,q) from Delta(D), Delta(2D)

Exit codes: 0 success, 1 invalid input, 2 internal verification failure
(a dual-route disagreement, i.e. a mathematical bug).  Data goes to
stdout as JSON (or CSV for tables with --format csv, also settable via
the CQSING_FORMAT environment variable); messages go to stderr.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from math import gcd

from . import config
from .arith import (
    RawType,
    canonical_decomposition,
    greedy_decomposition,
    hj_expansion,
    normalize_type,
    q_matrix,
    sum_with_canonical,
)
from .errors import InvalidInputError, VerificationError
from .germs import generic_germ, is_generic, valuation_vector
from .invariants import (
    class_report,
    delta_cap,
    delta_curvette_sum,
    delta_table,
    kappa_generic,
    mnul_decomposition,
    mu_class,
    newton_number_data,
    r_blache,
    reconstruct,
    reconstruction_round_trip,
)
from .lattice import ClassLattice, hull_of_class, hull_of_diagram
from .oracle import dp_coin_optimal
from .reportio import (
    encode_rational,
    parse_germ,
    render_svg,
    serialize_report,
    serialize_table,
)
from .resolution import discrepancy, monomial_valuations


def _singularity(args):
    if args.raw is not None:
        return normalize_type(RawType(args.d, args.q, args.raw))
    if args.d == 1:
        return hj_expansion(1, 0)
    return hj_expansion(args.d, args.q)


def _cmd_info(args):
    X = _singularity(args)
    out = {
        "d": X.d,
        "q": X.q,
        "n": X.n,
        "qseq": list(X.qseq),
        "cseq": list(X.cseq),
        "qbarseq": list(X.qbarseq),
        "w": X.w,
        "canonical": list(canonical_decomposition(X).entries),
        "q_matrix": [list(row) for row in q_matrix(X)],
        "discrepancy": [encode_rational(e) for e in discrepancy(X)],
    }
    print(json.dumps(out))
    return 0


def _cmd_table(args):
    X = _singularity(args)
    reports = delta_table(X)
    print(serialize_table(reports, args.format), end="")
    return 0


def _cmd_class(args):
    X = _singularity(args)
    report = class_report(X, args.k)
    print(serialize_report(report, args.format), end="" if args.format == "csv" else "\n")
    return 0


def _cmd_germ(args):
    X = _singularity(args)
    parsed = parse_germ(args.poly, X)
    vals, mults = valuation_vector(X, parsed.support)
    data = newton_number_data(X, parsed.k, parsed.support.points)
    out = {
        "d": X.d,
        "q": X.q,
        "k": parsed.k,
        "support": sorted(map(list, parsed.support.points)),
        "generic": is_generic(X, parsed.support),
        "mu": encode_rational(data.mu),
        "interior_points": data.interior,
        "lattice_segments": data.lattice_segments,
        "valuations": [encode_rational(v) for v in vals],
    }
    print(json.dumps(out))
    return 0


def _cmd_newton(args):
    X = _singularity(args)
    polys = [hull_of_class(X, args.k)]
    labels = [f"L({args.k % X.d})"]
    if args.germ is not None:
        parsed = parse_germ(args.germ, X)
        if parsed.k != args.k % X.d:
            raise InvalidInputError(
                f"germ has class {parsed.k}, requested class {args.k % X.d}"
            )
        polys.append(hull_of_diagram(sorted(parsed.support.points), X, parsed.k))
        labels.append("N(f)")
    render_svg(polys, ClassLattice(X, args.k), args.svg, labels)
    out = {
        "svg": args.svg,
        "polygons": [[list(v) for v in p.vertices] for p in polys],
    }
    print(json.dumps(out))
    return 0


def _check_pair(X):
    """Identity suite for one singularity; raises on any failure."""
    d, q = X.d, X.q
    qs, qb = X.qseq, X.qbarseq
    # qbar partial-fraction identity and unimodularity
    for i in range(1, X.n + 1):
        acc = sum(Fraction(1, qs[j] * qs[j + 1]) for j in range(i))
        config.check("lemma identity qbar sum", Fraction(qb[i]) == d * qs[i] * acc,
                     f"{X} i={i}")
    q_matrix(X)
    canonical_decomposition(X)
    discrepancy(X)
    denoms = [qs[i] for i in X.coin_indices()]
    for k in range(d):
        mu_class(X, k)
        kappa_generic(X, k)
        if k:
            config.check(
                "greedy matches DP optimum",
                greedy_decomposition(X, k).norm_1 == dp_coin_optimal(denoms, k),
                f"{X} k={k}",
            )
            sum_with_canonical(X, k)
            delta_curvette_sum(X, generic_germ(X, k))
            mnul_decomposition(X, k)
    config.check("reconstruction round trip", reconstruction_round_trip(X), f"{X}")
    config.check(
        "quasi-smooth Delta", delta_cap(X, 1) == Fraction(d - 1, 2 * d), f"{X}"
    )
    config.check("Delta(0) = 0", delta_cap(X, 0) == 0, f"{X}")
    for k in range(d):
        config.check(
            "R(k) = -Delta(-k)",
            r_blache(X, k) + delta_cap(X, -k) == 0,
            f"{X} k={k}",
        )
    bound = 2 * d
    for r in range(0, bound + 1, max(1, d // 3)):
        for s in range(0, bound + 1, max(1, d // 3)):
            monomial_valuations(X, r, s)


def _cmd_check(args):
    if args.dmax is not None:
        pairs = [
            (d, q)
            for d in range(2, args.dmax + 1)
            for q in range(1, d)
            if gcd(d, q) == 1
        ]
    else:
        X = _singularity(args)
        pairs = [(X.d, X.q)] if X.d > 1 else []
    for d, q in pairs:
        _check_pair(hj_expansion(d, q))
    print(json.dumps({"checked_types": len(pairs), "status": "ok"}))
    return 0


def _cmd_reconstruct(args):
    X = reconstruct(_parse_fraction(args.d1), _parse_fraction(args.d2))
    print(json.dumps({"d": X.d, "q": X.q}))
    return 0


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational number: {text!r} ({exc})")


def _add_type_args(sub):
    sub.add_argument("d", type=int, help="group order")
    sub.add_argument("q", type=int, help="second action weight (or a with --raw)")
    sub.add_argument(
        "--raw",
        type=int,
        metavar="B",
        default=None,
        help="interpret the positional pair as the raw action (d; q, B)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cqsing",
        description="Exact invariants of cyclic quotient surface singularities",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default=os.environ.get("CQSING_FORMAT", "json"),
        help="output format (default from CQSING_FORMAT, else json)",
    )
    parser.add_argument(
        "--verify",
        choices=config.VERIFY_LEVELS,
        default="assert",
        help="dual-route verification level (default: assert)",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("info", help="resolution data of one type")
    _add_type_args(sub)
    sub.set_defaults(func=_cmd_info)

    sub = subs.add_parser("table", help="Delta table for k = 0..d-1")
    _add_type_args(sub)
    sub.set_defaults(func=_cmd_table)

    sub = subs.add_parser("class", help="invariants of one divisor class")
    _add_type_args(sub)
    sub.add_argument("k", type=int, help="divisor class")
    sub.set_defaults(func=_cmd_class)

    sub = subs.add_parser("germ", help="analyze a quasi-invariant polynomial")
    _add_type_args(sub)
    sub.add_argument("poly", help="polynomial in x and y, e.g. 'x^2-y'")
    sub.set_defaults(func=_cmd_germ)

    sub = subs.add_parser("newton", help="render Newton polygons as SVG")
    _add_type_args(sub)
    sub.add_argument("k", type=int, help="divisor class")
    sub.add_argument("--germ", default=None, help="overlay this germ's polygon")
    sub.add_argument("--svg", required=True, help="output path")
    sub.set_defaults(func=_cmd_newton)

    sub = subs.add_parser("check", help="run the identity suite")
    _add_type_args(sub)
    sub.add_argument("--dmax", type=int, default=None,
                     help="sweep every coprime pair with d <= N instead")
    sub.set_defaults(func=_cmd_check)

    sub = subs.add_parser("reconstruct", help="recover (d,q) from two Delta values")
    sub.add_argument("d1", help="Delta at a quasi-smooth class, as NUM/DEN")
    sub.add_argument("d2", help="Delta at its double, as NUM/DEN")
    sub.set_defaults(func=_cmd_reconstruct)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config.set_verification(args.verify)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
