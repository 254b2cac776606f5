"""Count primes whose characteristic polynomial is itself prime.

For each monic irreducible p of degree n, the charpoly N of the reduced
T-action is a monic degree-n polynomial; this scan counts the p where N is
again irreducible.  The count normalized by n^2/q^n tends to the density
constant printed at the end.

Usage: python demos/koblitz_table.py [max_degree] [threads]
"""

import sys
import time

from drinfeld import ScanConfig, const_koblitz, field_ctx, scan


def main():
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    threads = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    ctx = field_ctx(5)

    t0 = time.monotonic()
    result = scan(ScanConfig(ctx, n_min=2, n_max=n_max, threads=threads,
                             compute_cyclic=False))
    elapsed = time.monotonic() - t0

    print(f"{'n':>3} {'count':>9} {'pi(n)':>10} {'count*n^2/5^n':>15}")
    for n in sorted(result.summaries):
        s = result.summaries[n]
        norm = s.koblitz * n * n / 5 ** n
        print(f"{n:>3} {s.koblitz:>9} {s.pi:>10} {norm:>15.6f}")

    C = const_koblitz(5, 20)
    print()
    print(f"predicted density: {C.value[:14]}  (tail < {float(C.tail_bound):.1e})")
    print(f"scan time: {elapsed:.1f}s with {threads} threads")


if __name__ == "__main__":
    main()
