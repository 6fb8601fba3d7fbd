"""Command-line interface.

Exit status: 0 success / identity holds, 1 identity failure, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .gl2 import parse_matrix, parse_point

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ORACLE_CHECKS = {
    "asai": "oracle-asai",
    "g2": "oracle-g2",
    "mu-sl2z": "oracle-mu-sl2z",
    "mu-fd": "oracle-mu-fd",
    "mu-cocycle": "oracle-mu-cocycle",
    "gv-cocycle": "oracle-gv-cocycle",
    "tgv": "oracle-tgv",
    "borel": "oracle-borel",
}


class UsageError(Exception):
    pass


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        print(text)


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"expected an integer, got {s!r}")


# ---------------------------------------------------------------------------

def cmd_dedekind(args) -> int:
    from .dedekind import dedekind_sum, dedekind_sum_fast

    m, n = _int(args.m), _int(args.n)
    fn = dedekind_sum_fast if args.fast else dedekind_sum
    v = fn(m, n)
    _emit(args, {"m": m, "n": n, "value": _q(v)}, _q(v))
    return EXIT_OK


def cmd_rademacher(args) -> int:
    from .rademacher import rademacher_phi, rademacher_phi_tilde

    g = parse_matrix(args.matrix)
    v = rademacher_phi_tilde(g) if args.tilde else rademacher_phi(g)
    _emit(args, {"matrix": g.to_json(), "tilde": args.tilde, "value": _q(v)}, _q(v))
    return EXIT_OK


def cmd_asai(args) -> int:
    from .gv import asai_e

    g1, g2 = parse_matrix(args.g1), parse_matrix(args.g2)
    v = asai_e(g1, g2)
    _emit(args, {"g1": g1.to_json(), "g2": g2.to_json(), "value": v}, str(v))
    return EXIT_OK


def cmd_gv(args) -> int:
    from .gv import re_gv_tilde, re_gv_tilde_naive

    g1, g2 = parse_matrix(args.g1), parse_matrix(args.g2)
    v = (re_gv_tilde_naive if args.naive else re_gv_tilde)(g1, g2)
    _emit(args, {"g1": g1.to_json(), "g2": g2.to_json(), "value": _q(v)}, _q(v))
    return EXIT_OK


def cmd_transgress(args) -> int:
    from .gv import asai_e, coboundary_phi_tilde, re_gv_tilde, transgression_defect

    if args.g1 or args.g2:
        if not (args.g1 and args.g2):
            raise UsageError("transgress needs both --g1 and --g2 (or --samples/--seed)")
        g1, g2 = parse_matrix(args.g1), parse_matrix(args.g2)
        d = transgression_defect(g1, g2)
        payload = {
            "g1": g1.to_json(),
            "g2": g2.to_json(),
            "half_re_gv": _q(re_gv_tilde(g1, g2) / 2),
            "asai_e": asai_e(g1, g2),
            "phi_tilde_coboundary": _q(coboundary_phi_tilde(g1, g2)),
            "defect": _q(d),
        }
        text = "\n".join(f"{k}: {payload[k]}" for k in ("half_re_gv", "asai_e", "phi_tilde_coboundary", "defect"))
        _emit(args, payload, text)
        return EXIT_OK if d == 0 else EXIT_FAIL
    args.suite = "transgression"
    return cmd_verify(args)


def cmd_eis(args) -> int:
    from .eisenstein import phi_chain, phi_closed, phi_sym, phi_sym_closed

    m = _int(args.m)
    x = parse_point(args.x)
    g = parse_matrix(args.matrix)
    if args.sym:
        if m % 2 or m < 2:
            raise UsageError("--sym needs an even weight m = 2n >= 2")
        fn = phi_sym_closed if args.closed else phi_sym
        v = fn(m // 2, x, g)
    else:
        fn = phi_closed if args.closed else phi_chain
        v = fn(m, x, g)
    _emit(args, {"m": m, "x": str(x), "matrix": g.to_json(), "sym": args.sym, "value": v.to_json()}, repr(v))
    return EXIT_OK


def _write_report(args, report) -> None:
    text = report.to_json() if args.json else report.summary() + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    if getattr(args, "list", False):
        for name, s in sorted(SUITES.items()):
            print(f"{name:22s} {s.default_samples:6d}  {s.description}")
        return EXIT_OK
    if not args.suite:
        raise UsageError("verify needs --suite (or --list)")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    samples = None if args.samples is None else _int(args.samples)
    seed = _int(args.seed)
    workers = None if args.workers is None else _int(args.workers)
    report = run_suite(args.suite, seed, samples, workers=workers, timing=args.timing)
    _write_report(args, report)
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def cmd_oracle(args) -> int:
    from .verify import run_suite

    names = sorted(ORACLE_CHECKS) if args.check == "all" else [args.check]
    tol = None if args.prec is None else 10.0 ** (-_int(args.prec))
    status = EXIT_OK
    reports = []
    for name in names:
        if name not in ORACLE_CHECKS:
            raise UsageError(f"unknown oracle check {name!r}; known: {', '.join(sorted(ORACLE_CHECKS))}")
        r = run_suite(ORACLE_CHECKS[name], _int(args.seed), None if args.samples is None else _int(args.samples),
                      tolerance=tol)
        reports.append(r)
        if r.status != "pass":
            status = EXIT_FAIL
    if args.json:
        sys.stdout.write(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n")
    else:
        for r in reports:
            print(r.summary())
    return status


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cocyclekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("dedekind", cmd_dedekind, "Dedekind sum s(m/n)")
    sp.add_argument("--m", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--fast", action="store_true", help="O(log n) kernel instead of the defining sum")

    sp = add("rademacher", cmd_rademacher, "Rademacher Phi (SL(2,Z)) or Phi~ (GL+(2,Q))")
    sp.add_argument("--matrix", required=True, help='"a b; c d"')
    sp.add_argument("--tilde", action="store_true")

    sp = add("asai", cmd_asai, "Petersson-Asai cocycle e(g1, g2)")
    sp.add_argument("--g1", required=True)
    sp.add_argument("--g2", required=True)

    sp = add("gv", cmd_gv, "rational Godbillon-Vey cocycle Re GV~(g1, g2)")
    sp.add_argument("--g1", required=True)
    sp.add_argument("--g2", required=True)
    sp.add_argument("--naive", action="store_true", help="enumerate fibers instead of the lattice formula")

    sp = add("transgress", cmd_transgress, "transgression identity for one pair or a random batch")
    sp.add_argument("--g1")
    sp.add_argument("--g2")
    sp.add_argument("--samples")
    sp.add_argument("--seed", default="0")
    sp.add_argument("--workers")
    sp.add_argument("--out")
    sp.add_argument("--timing", action="store_true")

    sp = add("eis", cmd_eis, "Eisenstein cocycle Phi^(m)_x(g)")
    sp.add_argument("--m", required=True)
    sp.add_argument("--x", required=True, help='"p/q,r/s"')
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--sym", action="store_true", help="symmetric-tensor variant, m = 2n")
    sp.add_argument("--closed", action="store_true", help="closed form (SL(2,Z), c > 0) instead of the chain")

    sp = add("verify", cmd_verify, "run a seeded identity suite")
    sp.add_argument("--suite")
    sp.add_argument("--samples")
    sp.add_argument("--seed", default="0")
    sp.add_argument("--workers", help="worker processes (default: $COCYCLEKIT_THREADS or 1)")
    sp.add_argument("--out", help="also write the JSON report here")
    sp.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identity)")
    sp.add_argument("--list", action="store_true", help="list suites")

    sp = add("oracle", cmd_oracle, "numeric q-series cross-checks")
    sp.add_argument("--check", required=True, help=f"one of: all, {', '.join(sorted(ORACLE_CHECKS))}")
    sp.add_argument("--prec", help="pass threshold 10^-prec (default: per-check tolerance)")
    sp.add_argument("--samples")
    sp.add_argument("--seed", default="0")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, ArithmeticError) as e:
        print(f"cocyclekit {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
