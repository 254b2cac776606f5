"""Fixed-trace prime counts: how often does a_p hit a given target?

For targets a in {0, 1, T} this counts the primes of each degree whose
Frobenius trace equals a exactly, and reports the raw normalized ratio
count * n / q^(n/2).  No convergence claim is attached to the ratio; the raw
numbers are the experiment.

Usage: python demos/lang_trotter.py [max_degree] [threads]
"""

import sys
import time

from drinfeld import (PolyA, ScanConfig, field_ctx, format_poly,
                      lt_ratio_report, scan)


def main():
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    threads = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    ctx = field_ctx(5)
    targets = (PolyA.zero(ctx), PolyA.one(ctx), PolyA.T(ctx))

    t0 = time.monotonic()
    result = scan(ScanConfig(ctx, n_min=1, n_max=n_max, lt_targets=targets,
                             threads=threads, compute_cyclic=False,
                             compute_koblitz=False))
    elapsed = time.monotonic() - t0

    header = f"{'n':>3}"
    for t in targets:
        header += f" {'a=' + format_poly(t):>14} {'ratio':>8}"
    print(header)
    for n in sorted(result.summaries):
        row = f"{n:>3}"
        for t in targets:
            count = result.lang_trotter(n, t)
            ratio = lt_ratio_report(5, n, t, count)["ratio"]
            row += f" {count:>14} {ratio:>8.3f}"
        print(row)
    print()
    print(f"scan time: {elapsed:.1f}s with {threads} threads")


if __name__ == "__main__":
    main()
