"""Command-line entry point.

Verbs:
  scan       mass scan over monic irreducibles, CSV/JSON output
  frob       per-prime invariants for one prime
  torsion    Frobenius data on the lambda-torsion (independent oracle)
  constants  density constants c_phi / C_phi with certified tails
  stats      summary counts and Lang-Trotter ratios for a degree range
  check      finite verifications (currently: `check group`)

Exit codes: 0 success, 1 usage error, 2 internal-consistency failure,
3 I/O error.  DRINFELD_THREADS sets the default worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .field import FieldCtx, FieldError
from .frobenius import InternalConsistencyError, a_p, prime_record
from .matgroups import check_group_report
from .polyring import ParseError, PolyA, format_poly, parse_poly_checked
from .skew import BadReductionError, DrinfeldModule, carlitz, default_rank2, \
    is_default_rank2
from .torsion import SearchLimitError, carlitz_scalar, frob_matrix_mod_lambda, \
    frob_trace_det_mod, reconstruct_a
from . import experiments


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_IO = 3


class UsageError(ValueError):
    pass


def _field_from_q(q):
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    s = 0
    while n % p == 0 and n > 1:
        n //= p
        s += 1
    if n != 1:
        raise UsageError(f"q = {q} is not a prime power")
    return FieldCtx(p, s)


def _parse_degrees(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad degree range {text!r}; use a or a..b")
    if lo < 1 or hi < lo:
        raise UsageError(f"bad degree range {text!r}")
    return lo, hi


def _parse_poly_arg(ctx, text, what):
    try:
        poly, warned = parse_poly_checked(ctx, text)
    except ParseError as e:
        raise UsageError(f"cannot parse {what} {text!r}: {e}")
    if warned:
        print(f"warning: coefficients of {what} reduced mod {ctx.p}",
              file=sys.stderr)
    return poly


def _module_from_args(ctx, args):
    phi = getattr(args, "phi", "default") or "default"
    g = getattr(args, "g", None)
    delta = getattr(args, "delta", None)
    if g or delta:
        if phi not in ("default", "custom"):
            raise UsageError("--phi conflicts with --g/--delta")
        gp = _parse_poly_arg(ctx, g, "--g") if g else PolyA.one(ctx)
        dp = _parse_poly_arg(ctx, delta, "--delta") if delta else None
        return DrinfeldModule(ctx, gp, dp, label="custom")
    if phi == "default":
        return default_rank2(ctx)
    if phi == "carlitz":
        return carlitz(ctx)
    raise UsageError(f"unknown --phi {phi!r} (use default, carlitz, or --g/--delta)")


def _default_threads():
    env = os.environ.get("DRINFELD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _add_common(sub):
    sub.add_argument("--q", type=int, default=5, help="field size (default 5)")
    sub.add_argument("--phi", default="default",
                     help="module: default | carlitz")
    sub.add_argument("--g", default=None, help="custom tau coefficient")
    sub.add_argument("--delta", default=None, help="custom tau^2 coefficient")


def build_parser():
    ap = argparse.ArgumentParser(prog="drinfeld", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sp = ap.add_subparsers(dest="verb")

    s = sp.add_parser("scan", help="mass scan of monic irreducibles")
    _add_common(s)
    s.add_argument("--deg", required=True, help="degree or range a..b")
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--out", default=None, help="CSV of per-prime records")
    s.add_argument("--summary", default=None, help="JSON summary path")
    s.add_argument("--lt", default=None, help="comma-separated trace targets")

    s = sp.add_parser("frob", help="invariants of a single prime")
    _add_common(s)
    s.add_argument("--prime", required=True)

    s = sp.add_parser("torsion", help="Frobenius on the lambda-torsion")
    _add_common(s)
    s.add_argument("--prime", required=True)
    s.add_argument("--lambda", dest="lam", required=True)

    s = sp.add_parser("constants", help="density constants")
    s.add_argument("--q", type=int, default=5)
    s.add_argument("--which", choices=("cyclic", "koblitz"), required=True)
    s.add_argument("--trunc", type=int, default=20)

    s = sp.add_parser("stats", help="summary counts for a degree range")
    _add_common(s)
    s.add_argument("--deg", required=True)
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--lt", default=None, help="comma-separated trace targets")

    s = sp.add_parser("check", help="finite verifications")
    s.add_argument("what", choices=("group",))
    s.add_argument("--q", type=int, default=5)
    return ap


def _record_json(rec):
    return {"prime": format_poly(rec.prime), "degree": rec.degree,
            "a_p": format_poly(rec.a_p), "eps": rec.eps,
            "charpoly": format_poly(rec.charpoly), "d": format_poly(rec.d),
            "e": format_poly(rec.e), "cyclic": rec.cyclic,
            "koblitz": rec.koblitz}


def _lt_targets(ctx, text):
    if not text:
        return ()
    return tuple(_parse_poly_arg(ctx, t.strip(), "--lt target")
                 for t in text.split(",") if t.strip())


def _cmd_scan(args):
    ctx = _field_from_q(args.q)
    module = _module_from_args(ctx, args)
    lo, hi = _parse_degrees(args.deg)
    cfg = experiments.ScanConfig(
        ctx, module=module, n_min=lo, n_max=hi,
        lt_targets=_lt_targets(ctx, args.lt),
        threads=args.threads or _default_threads(),
        collect_records=bool(args.out))
    result = experiments.scan(cfg)
    if args.out:
        experiments.write_csv(result, args.out)
    if args.summary:
        experiments.write_summary(result, args.summary)
    if not args.out and not args.summary:
        for n in sorted(result.summaries):
            s = result.summaries[n]
            print(json.dumps(s.json_dict(ctx.q, module.label)))
    return EXIT_OK


def _cmd_frob(args):
    ctx = _field_from_q(args.q)
    module = _module_from_args(ctx, args)
    if not is_default_rank2(module):
        raise UsageError("frob needs the closed-form unit; only the default "
                         "family is supported (use torsion for other modules)")
    p = _parse_poly_arg(ctx, args.prime, "--prime")
    if not p.is_monic() or not p.is_irreducible():
        raise UsageError(f"{args.prime!r} is not a monic irreducible")
    rec = prime_record(module, p)
    print(json.dumps(_record_json(rec)))
    return EXIT_OK


def _cmd_torsion(args):
    ctx = _field_from_q(args.q)
    module = _module_from_args(ctx, args)
    p = _parse_poly_arg(ctx, args.prime, "--prime")
    lam = _parse_poly_arg(ctx, args.lam, "--lambda")
    for f, name in ((p, "--prime"), (lam, "--lambda")):
        if not f.is_monic() or not f.is_irreducible():
            raise UsageError(f"{name} must be a monic irreducible")
    out = {"q": ctx.q, "prime": format_poly(p), "lambda": format_poly(lam)}
    if module.rank == 1:
        scal = carlitz_scalar(module, p, lam)
        out["scalar"] = format_poly(scal)
        out["matches_prime_mod_lambda"] = scal == p % lam
    else:
        default = is_default_rank2(module)
        E = frob_matrix_mod_lambda(module, p, lam)
        tr, det = frob_trace_det_mod(module, p, lam, check_det=default)
        out["matrix"] = [[format_poly(E[i][j]) for j in range(2)]
                         for i in range(2)]
        out["trace"] = format_poly(tr)
        out["det"] = format_poly(det)
        if default:
            out["det_matches_prime"] = det == p % lam
            out["trace_matches_charpoly_method"] = tr == a_p(module, p) % lam
    print(json.dumps(out))
    return EXIT_OK


def _cmd_constants(args):
    if args.trunc < 0:
        raise UsageError("--trunc must be nonnegative")
    ctx = _field_from_q(args.q)  # validates q
    fn = experiments.const_cyclic if args.which == "cyclic" \
        else experiments.const_koblitz
    approx = fn(ctx.q, args.trunc)
    print(json.dumps(approx.json_dict()))
    return EXIT_OK


def _cmd_stats(args):
    ctx = _field_from_q(args.q)
    module = _module_from_args(ctx, args)
    lo, hi = _parse_degrees(args.deg)
    targets = _lt_targets(ctx, args.lt)
    cfg = experiments.ScanConfig(
        ctx, module=module, n_min=lo, n_max=hi, lt_targets=targets,
        threads=args.threads or _default_threads())
    result = experiments.scan(cfg)
    out = []
    for n in sorted(result.summaries):
        s = result.summaries[n]
        d = s.json_dict(ctx.q, module.label)
        d["cyclic_ratio"] = s.cyclic / s.pi if s.pi else None
        d["koblitz_normalized"] = s.koblitz * n * n / ctx.q ** n
        d["lt_ratios"] = {
            t: experiments.lt_ratio_report(ctx.q, n, t, c)["ratio"]
            for t, c in s.lt.items()}
        out.append(d)
    print(json.dumps(out, indent=1))
    return EXIT_OK


def _cmd_check(args):
    report = check_group_report(args.q)
    print(json.dumps(report, indent=1))
    return EXIT_OK if report["ok"] else EXIT_INTERNAL


_DISPATCH = {"scan": _cmd_scan, "frob": _cmd_frob, "torsion": _cmd_torsion,
             "constants": _cmd_constants, "stats": _cmd_stats,
             "check": _cmd_check}


def parse_and_run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if not args.verb:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[args.verb](args)
    except (UsageError, ParseError, FieldError, BadReductionError,
            ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalConsistencyError, SearchLimitError, AssertionError) as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


def main():
    return parse_and_run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
