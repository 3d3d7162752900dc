"""Command-line front end: compute constants, verify identities, emit tables.

Exit codes: 0 success, 1 verification failure, 2 bad flags, 3 tolerance
not met.  Records follow the OutputRecord schema (JSON lines or CSV with
the exact field order below); identical flags produce byte-identical
output apart from the wall_time_ms field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import mpmath as mp

from .errors import HypStieltjesError, InvalidParameters, ToleranceNotMet
from .oracle import stieltjes_limit
from .precision import DEFAULT_BITS, shortest_roundtrip_str, workprec
from .stieltjes import (ACCEL_CLASSIC, ACCEL_NONE, ACCEL_TAIL, StieltjesRequest,
                        convergence_curve, stieltjes_constant)
from .trigintegrals import J_MAX
from .verifysuite import SUITES, run_suite

RECORD_FIELDS = ("quantity", "k", "a", "value", "error_estimate", "terms_used",
                 "method", "precision_bits", "wall_time_ms")


def _record(quantity, k, a_str, result, bits, wall_ms):
    with workprec(bits):
        return {
            "quantity": quantity,
            "k": int(k),
            "a": a_str,
            "value": shortest_roundtrip_str(result.value, bits),
            "error_estimate": mp.nstr(mp.mpf(result.error_estimate), 8),
            "terms_used": int(result.terms_used),
            "method": str(result.method),
            "precision_bits": int(bits),
            "wall_time_ms": int(wall_ms),
        }


def _emit(records, fmt, stream):
    if fmt == "json":
        for rec in records:
            stream.write(json.dumps(rec, separators=(",", ":")) + "\n")
    else:
        stream.write(",".join(RECORD_FIELDS) + "\n")
        for rec in records:
            stream.write(",".join(str(rec[f]) for f in RECORD_FIELDS) + "\n")
    stream.flush()


def _parse_a(text):
    if text in ("1",):
        return 1, "1"
    if text in ("1/2", "0.5"):
        return mp.mpf(1) / 2, "0.5"
    raise InvalidParameters("--a must be 1 or 1/2")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hypstieltjes",
        description="Stieltjes constants via hypergeometric summations, "
                    "with an identity verification suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--terms", type=int, default=10000,
                       help="number of series terms N (default 10000)")
        p.add_argument("--accel", choices=[ACCEL_NONE, ACCEL_CLASSIC, ACCEL_TAIL],
                       default=ACCEL_TAIL, help="tail acceleration mode")
        p.add_argument("--bits", type=int, default=DEFAULT_BITS,
                       help="working precision in bits (default 256)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--threads", type=int, default=0,
                       help="worker hint; results are independent of it "
                            "(fixed pairwise-tree reduction)")

    p_st = sub.add_parser("stieltjes", help="compute a single constant")
    p_st.add_argument("--k", type=int, required=True)
    p_st.add_argument("--a", default="1", help="expansion point: 1 or 1/2")
    common(p_st)

    p_tab = sub.add_parser("table", help="compute gamma_0..gamma_K")
    p_tab.add_argument("--max-k", type=int, default=3, dest="max_k")
    p_tab.add_argument("--a", default="1", help="expansion point: 1 or 1/2")
    common(p_tab)

    p_ver = sub.add_parser("verify", help="run identity suites")
    p_ver.add_argument("--suite", choices=list(SUITES), default="all")
    p_ver.add_argument("--tol", type=str, default="1e-10")
    p_ver.add_argument("--bits", type=int, default=DEFAULT_BITS)
    p_ver.add_argument("--threads", type=int, default=0)
    p_ver.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


def _validate_common(args):
    if getattr(args, "k", None) is not None and not (0 <= args.k <= J_MAX):
        raise InvalidParameters(f"--k must lie in 0..J_MAX={J_MAX}")
    if getattr(args, "max_k", None) is not None and not (0 <= args.max_k <= J_MAX):
        raise InvalidParameters(f"--max-k must lie in 0..J_MAX={J_MAX}")
    if getattr(args, "terms", 1) < 1:
        raise InvalidParameters("--terms must be >= 1")
    if getattr(args, "bits", 64) < 64:
        raise InvalidParameters("--bits must be >= 64")
    if getattr(args, "threads", 0) < 0:
        raise InvalidParameters("--threads must be >= 0")


def _compute_one(k, a_val, a_str, args):
    t0 = time.monotonic()
    req = StieltjesRequest(k, a_val, args.terms, args.accel, args.bits)
    res = stieltjes_constant(req)
    wall = (time.monotonic() - t0) * 1000
    return _record("stieltjes_gamma", k, a_str, res, args.bits, wall)


def cmd_stieltjes(args):
    a_val, a_str = _parse_a(args.a)
    rec = _compute_one(args.k, a_val, a_str, args)
    _emit([rec], args.format, sys.stdout)
    return 0


def cmd_table(args):
    a_val, a_str = _parse_a(args.a)
    records = []
    for k in range(args.max_k + 1):
        records.append(_compute_one(k, a_val, a_str, args))
    _emit(records, args.format, sys.stdout)
    # convergence diagnostics (stderr; not part of the record schema)
    try:
        for k in range(1, min(args.max_k, 2) + 1):
            if a_val != 1:
                break
            cps = sorted({max(8, args.terms // 100), max(16, args.terms // 10), args.terms})
            req = StieltjesRequest(k, 1, args.terms, ACCEL_NONE, min(args.bits, 192))
            curve = convergence_curve(req, cps)
            ref = stieltjes_limit(k, 1, max(2048, args.terms), bits=min(args.bits, 192))
            with workprec(min(args.bits, 192)):
                errs = {n: abs(v - ref.value) for n, v in curve.items()}
                ns = sorted(errs)
                if errs[ns[0]] > 0 and errs[ns[-1]] > 0:
                    slope = (mp.log(errs[ns[-1]]) - mp.log(errs[ns[0]])) / \
                        (mp.log(ns[-1]) - mp.log(ns[0]))
                    print(f"# diagnostics k={k}: N={ns} slope~{mp.nstr(slope, 3)}",
                          file=sys.stderr)
    except HypStieltjesError:
        pass
    return 0


def cmd_verify(args):
    t0 = time.monotonic()
    results = run_suite(args.suite, mp.mpf(args.tol), args.bits)
    wall = time.monotonic() - t0
    width = max(len(r.name) for r in results) + 2
    print(f"# suite={args.suite} tol={args.tol} bits={args.bits} "
          f"({wall:.1f}s)", file=sys.stderr)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        kind = "structural" if r.structural else "identity"
        note = f"  [{r.note}]" if r.note else ""
        print(f"{status}  {r.name:<{width}} err={mp.nstr(r.error, 4):<12} "
              f"thr={mp.nstr(r.threshold, 3)} ({kind}){note}", file=sys.stderr)
    failures = [r for r in results if not r.passed]
    for r in failures:
        sys.stdout.write(json.dumps({
            "check": r.name,
            "error": mp.nstr(r.error, 8),
            "threshold": mp.nstr(r.threshold, 4),
            "structural": r.structural,
            "reason": "ToleranceNotMet",
        }, separators=(",", ":")) + "\n")
    sys.stdout.flush()
    n_pass = len(results) - len(failures)
    print(f"# {n_pass}/{len(results)} checks passed", file=sys.stderr)
    return 0 if not failures else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_common(args)
        if args.command == "stieltjes":
            return cmd_stieltjes(args)
        if args.command == "table":
            return cmd_table(args)
        return cmd_verify(args)
    except InvalidParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToleranceNotMet as exc:
        print(f"error: tolerance not met: {exc}", file=sys.stderr)
        return 3
    except HypStieltjesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
