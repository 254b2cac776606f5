"""Evaluate the two predicted densities as truncated Euler products.

Both constants are products over degrees d of a local factor raised to the
number of monic irreducibles of degree d.  The evaluation runs in fixed-point
integers (192 fractional bits) with exact rational local factors, and every
truncation carries a certified bound on the omitted tail.

Usage: python demos/density_constants.py [max_truncation]
"""

import sys

from drinfeld import const_cyclic, const_koblitz


def main():
    D_max = int(sys.argv[1]) if len(sys.argv) > 1 else 20

    print("cyclic-reduction density, truncations:")
    print(f"{'D':>4} {'value (30 digits)':>34} {'tail bound':>12}")
    for D in range(2, D_max + 1, 3):
        c = const_cyclic(5, D)
        print(f"{D:>4} {c.value:>34} {float(c.tail_bound):>12.2e}")
    c = const_cyclic(5, D_max)
    print(f"{D_max:>4} {c.value:>34} {float(c.tail_bound):>12.2e}")

    print()
    print("prime-charpoly density, truncations:")
    print(f"{'D':>4} {'value (30 digits)':>34} {'tail bound':>12}")
    for D in range(2, D_max + 1, 3):
        C = const_koblitz(5, D)
        print(f"{D:>4} {C.value:>34} {float(C.tail_bound):>12.2e}")
    C = const_koblitz(5, D_max)
    print(f"{D_max:>4} {C.value:>34} {float(C.tail_bound):>12.2e}")

    print()
    print("the second product converges like q^(-d) per degree, so its tail")
    print("shrinks much slower than the first (q^(-3d) per degree)")


if __name__ == "__main__":
    main()
