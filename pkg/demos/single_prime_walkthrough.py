"""Walk through every per-prime invariant for one monic irreducible.

Shows how the T-image of the rank-2 module acts F_q-linearly on the residue
field, and how the characteristic polynomial of that action packages the
Frobenius trace, the invariant factors, and the cyclic/prime-charpoly flags.

Usage: python demos/single_prime_walkthrough.py [prime]
"""

import sys

import numpy as np

from drinfeld import (action_matrix, charpoly_generator, default_rank2,
                      eps_p, field_ctx, format_poly, format_skew, half_coeff,
                      module_structure, parse_poly, prime_record,
                      resolve_half_sign)


def main():
    ctx = field_ctx(5)
    phi = default_rank2(ctx)
    text = sys.argv[1] if len(sys.argv) > 1 else "T^4+2"
    p = parse_poly(ctx, text)
    assert p.is_monic() and p.is_irreducible(), "need a monic irreducible"
    n = p.degree()

    print(f"module: phi_T = {format_skew(phi.phi_T())} over F_5[T]")
    print(f"prime:  p = {format_poly(p)}  (degree {n})")
    print()

    M = action_matrix(phi, p)
    print("action matrix of phi_T on F_5[T]/(p), monomial basis:")
    print(np.array(M.mat))
    print()

    N = charpoly_generator(M)
    eps = eps_p(phi, p)
    rec = prime_record(phi, p)
    print(f"charpoly N = {format_poly(N)}")
    print(f"unit eps = {eps}   (always 1 for this family away from T)")
    print(f"trace a = 1 + eps*p - eps*N = {format_poly(rec.a_p)}")
    print(f"degree bound: deg a = {rec.a_p.degree()} <= {n}/2")
    print()

    d, e = module_structure(M, N)
    print(f"invariant factors: module = A/({format_poly(d)}) x "
          f"A/({format_poly(d)})({format_poly(e)})")
    print(f"cyclic reduction: {rec.cyclic}")
    print(f"prime charpoly:   {rec.koblitz}")

    if n % 2 == 0:
        sign = resolve_half_sign(phi)
        top = half_coeff(phi, p, sign=sign)
        print()
        print(f"closed-form top trace coefficient (independent check): {top}")
        want = rec.a_p.coeffs[n // 2] if rec.a_p.degree() >= n // 2 else 0
        print(f"matrix-method coefficient of T^{n // 2}:              {want}")
        assert top == want


if __name__ == "__main__":
    main()
