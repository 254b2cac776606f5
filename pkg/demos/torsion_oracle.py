"""Recover the Frobenius trace from torsion points alone.

For each auxiliary prime lambda, the lambda-torsion of the reduced module is
a free rank-2 module over F_q[T]/(lambda) inside a finite tower extension.
Frobenius acts on it by a 2x2 matrix: its trace is a_p mod lambda and its
determinant is p mod lambda.  CRT over enough lambdas pins a_p down exactly,
with no reference to the action-matrix characteristic polynomial.

Usage: python demos/torsion_oracle.py [prime]
"""

import sys

from drinfeld import (a_p, carlitz, carlitz_scalar, default_lambdas,
                      default_rank2, field_ctx, format_poly,
                      frob_matrix_mod_lambda, frob_trace_det_mod, parse_poly,
                      reconstruct_a)


def main():
    ctx = field_ctx(5)
    phi = default_rank2(ctx)
    text = sys.argv[1] if len(sys.argv) > 1 else "T^3+3*T+2"
    p = parse_poly(ctx, text)
    assert p.is_monic() and p.is_irreducible(), "need a monic irreducible"

    lambdas = default_lambdas(ctx, p)
    print(f"prime p = {format_poly(p)}")
    print(f"auxiliary primes: {[format_poly(l) for l in lambdas]}")
    print()

    for lam in lambdas:
        E = frob_matrix_mod_lambda(phi, p, lam)
        tr, det = frob_trace_det_mod(phi, p, lam)
        rows = "; ".join(", ".join(format_poly(E[i][j]) for j in range(2))
                         for i in range(2))
        print(f"lambda = {format_poly(lam)}: Frob = [{rows}]")
        print(f"  trace = {format_poly(tr)}   det = {format_poly(det)}"
              f"   (p mod lambda = {format_poly(p % lam)})")

    a_torsion = reconstruct_a(phi, p, lambdas=lambdas)
    a_matrix = a_p(phi, p)
    print()
    print(f"CRT-reconstructed trace: {format_poly(a_torsion)}")
    print(f"matrix-method trace:     {format_poly(a_matrix)}")
    assert a_torsion == a_matrix
    print("the two independent methods agree")

    # the rank-1 T + tau module acts on its torsion by the scalar p
    C = carlitz(ctx)
    lam = lambdas[0]
    s = carlitz_scalar(C, p, lam)
    print()
    print(f"rank-1 module scalar on the {format_poly(lam)}-torsion: "
          f"{format_poly(s)} == p mod lambda")
    assert s == p % lam


if __name__ == "__main__":
    main()
