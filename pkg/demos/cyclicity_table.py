"""Count primes of cyclic reduction degree by degree.

Scans every monic irreducible p of degree n at q = 5 and counts those where
the residue field is a cyclic A-module under the reduced action (equivalently
the first invariant factor is 1).  The ratio tends to the density constant
from the companion constants demo.

Usage: python demos/cyclicity_table.py [max_degree] [threads]
"""

import sys
import time

from drinfeld import ScanConfig, const_cyclic, field_ctx, scan


def main():
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    threads = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    ctx = field_ctx(5)

    t0 = time.monotonic()
    result = scan(ScanConfig(ctx, n_min=1, n_max=n_max, threads=threads,
                             compute_koblitz=False))
    elapsed = time.monotonic() - t0

    print(f"{'n':>3} {'cyclic':>10} {'pi(n)':>10} {'ratio':>10}")
    for n in sorted(result.summaries):
        s = result.summaries[n]
        print(f"{n:>3} {s.cyclic:>10} {s.pi:>10} {s.cyclic / s.pi:>10.6f}")
        if s.bad:
            print(f"    (bad reduction at: {', '.join(s.bad)})")

    c = const_cyclic(5, 20)
    print()
    print(f"predicted density: {c.value[:18]}  (tail < {float(c.tail_bound):.1e})")
    print(f"scan time: {elapsed:.1f}s with {threads} threads")


if __name__ == "__main__":
    main()
