"""Command-line interface: ``etacert {verify-paper,verify,coeff,scan}``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Dict, Optional

from . import congruences
from .qseries import ExponentVector, pk_oracle_table, pk_series
from .radu import Certificate, RaduTuple, format_rational, verify_congruence

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

COEFF_GUARD_MOD = 10**5
COEFF_GUARD_INT = 10**4
ORACLE_SPOT_CHECK = 500
CANDIDATE = "CANDIDATE (not a proof)"


def parse_exponents(text: str) -> Dict[int, int]:
    """Parse ``"1:4,5:-1,7:-1"`` into ``{1: 4, 5: -1, 7: -1}``."""
    entries: Dict[int, int] = {}
    if not text.strip():
        return entries
    for item in text.split(","):
        try:
            delta, exp = item.split(":")
            delta, exp = int(delta), int(exp)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad exponent entry {item!r}; expected delta:exponent") from None
        if delta < 1:
            raise argparse.ArgumentTypeError(f"delta must be positive in {item!r}")
        entries[delta] = entries.get(delta, 0) + exp
    return entries


def _describe(cert: Certificate) -> str:
    orbit = ",".join(map(str, cert.orbit))
    line = f"orbit={{{orbit}}} floor_v={cert.floor_v} {cert.verdict}"
    if cert.failure:
        line += f" at {cert.failure['stage']} {json.dumps(cert.failure['detail'], sort_keys=True)}"
    return line


def _print_certificate(cert: Certificate, out):
    tup = cert.tuple
    print(f"tuple: m={tup.m} M={tup.M} N={tup.N} t={tup.t} r={tup.r.entries}", file=out)
    print(f"rprime: {cert.rprime.entries}  u={cert.u}", file=out)
    print(f"kappa={cert.kappa} index={cert.index} orbit={cert.orbit}", file=out)
    for delta, bound in cert.cusp_bounds:
        print(f"  cusp delta={delta}: {format_rational(bound)}", file=out)
    print(f"v={format_rational(cert.v)} floor_v={cert.floor_v} "
          f"coefficients_checked={cert.coefficients_checked}", file=out)
    print(f"verdict: {_describe(cert)}", file=out)


def cmd_verify_paper(args, out, registry=None) -> int:
    start = time.perf_counter()
    certs, ok = [], True
    for which in congruences.THEOREMS:
        for case, cert, claims in congruences.verify_theorem(which, registry):
            certs.append(cert)
            ok &= cert.verified
            if not args.json:
                print(f"{case.name:<5} {_describe(cert)}", file=out)
                for claim in claims:
                    print(f"      proved: {claim}", file=out)
    if args.json:
        print(json.dumps([c.to_dict() for c in certs], indent=2), file=out)
    else:
        print(f"{sum(c.verified for c in certs)}/{len(certs)} cases verified", file=out)
        if args.timing:
            print(f"elapsed {time.perf_counter() - start:.3f}s", file=out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args, out) -> int:
    tup = RaduTuple(args.m, args.M, args.N, args.t, ExponentVector(args.M, args.r))
    cert = verify_congruence(tup, ExponentVector(args.N, args.rprime), args.mod)
    if args.json:
        print(cert.to_json(indent=2), file=out)
    else:
        _print_certificate(cert, out)
    return EXIT_OK if cert.verified else EXIT_FAILED


def cmd_coeff(args, out) -> int:
    series = pk_series(args.k, args.up_to, args.mod)
    spot = min(args.up_to, ORACLE_SPOT_CHECK)
    oracle = pk_oracle_table(args.k, spot, args.mod)
    if list(series.coeffs[: spot + 1]) != oracle:
        print("internal error: series and oracle disagree", file=sys.stderr)
        return EXIT_FAILED
    if args.json:
        print(json.dumps(list(series.coeffs)), file=out)
    else:
        for n, c in enumerate(series):
            print(f"{n} {c}", file=out)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    hits = congruences.oracle_scan(args.k, args.m, args.mod, args.n_checks)
    if args.json:
        print(json.dumps({"status": CANDIDATE, "k": args.k, "m": args.m,
                          "u": args.mod, "n_checks": args.n_checks,
                          "candidates": hits}), file=out)
    else:
        for t in hits:
            print(f"{CANDIDATE} t={t}: p_{args.k}({args.m}n+{t}) = 0 (mod {args.mod}) "
                  f"for n <= {args.n_checks}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etacert", allow_abbrev=False,
        description="Certified verification of congruences for 2-color partitions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-paper", allow_abbrev=False,
                       help="verify all five paper cases")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true",
                   help="append a wall-clock line (text mode only)")

    p = sub.add_parser("verify", allow_abbrev=False,
                       help="run the finite check on user-supplied constants")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--M", type=int, required=True, metavar="LEVEL_R")
    p.add_argument("--N", type=int, required=True, metavar="LEVEL_RPRIME")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=parse_exponents, required=True, help='e.g. "1:4,5:-1,7:-1"')
    p.add_argument("--rprime", type=parse_exponents, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("coeff", allow_abbrev=False, help="print p_k(0..up_to)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--up-to", type=int, required=True)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("scan", allow_abbrev=False,
                       help="screen residues with the partition oracle (not a proof)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--n-checks", type=int, default=30)
    p.add_argument("--json", action="store_true")
    return parser


def _validate(parser, args):
    try:
        if args.command == "verify":
            if args.mod < 2:
                raise ValueError("--mod must be at least 2")
            RaduTuple(args.m, args.M, args.N, args.t, ExponentVector(args.M, args.r))
            ExponentVector(args.N, args.rprime)
        elif args.command == "coeff":
            if args.k < 0 or args.up_to < 0:
                raise ValueError("--k and --up-to must be nonnegative")
            if args.mod is not None and args.mod < 1:
                raise ValueError("--mod must be positive")
            default = COEFF_GUARD_INT if args.mod is None else COEFF_GUARD_MOD
            guard = congruences.work_guard(default)
            if args.up_to > guard:
                raise ValueError(f"--up-to {args.up_to} exceeds the work guard {guard}")
        elif args.command == "scan":
            if args.k < 0 or args.m < 1 or args.mod < 2 or args.n_checks < 0:
                raise ValueError("need --k >= 0, --m >= 1, --mod >= 2, --n-checks >= 0")
            top = args.m * args.n_checks + args.m
            guard = congruences.work_guard(congruences.DEFAULT_SCAN_GUARD)
            if top > guard:
                raise ValueError(f"scan would reach n = {top}, above the work guard {guard}")
    except ValueError as exc:
        parser.error(str(exc))


def main(argv=None, out=None, registry: Optional[dict] = None) -> int:
    """Entry point; ``registry`` replaces the paper cases (used by tests)."""
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify-paper":
        try:
            return cmd_verify_paper(args, out, registry)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAILED
    return {"verify": cmd_verify, "coeff": cmd_coeff, "scan": cmd_scan}[args.command](args, out)


if __name__ == "__main__":
    sys.exit(main())
