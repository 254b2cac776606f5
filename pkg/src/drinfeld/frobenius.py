"""Per-prime invariants of a reduced rank-2 module: the F_q-linear action
matrix of the T-image on the residue field, its characteristic polynomial,
the unit eps_p, the trace a_p, and the invariant factors (d, e).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldError, ext_ctx, frob, norm, trace, gauss_reduce
from .polyring import PolyA, format_poly
from .skew import DrinfeldModule, reduce_mod


class InternalConsistencyError(AssertionError):
    """An exact arithmetic identity failed; indicates a bug."""


class ActionMatrix:
    """Matrix of x -> phi_T(x) on F_q[T]/(p) in the monomial basis."""

    __slots__ = ("ext", "mat")

    def __init__(self, ext, mat):
        self.ext = ext
        self.mat = mat


@dataclass(frozen=True)
class PrimeRecord:
    prime: PolyA
    degree: int
    a_p: PolyA
    eps: int
    charpoly: PolyA
    d: PolyA
    e: PolyA
    cyclic: bool
    koblitz: bool

    def csv_row(self):
        return ",".join([
            format_poly(self.prime), str(self.degree), format_poly(self.a_p),
            str(self.eps), format_poly(self.charpoly), format_poly(self.d),
            format_poly(self.e), "1" if self.cyclic else "0",
            "1" if self.koblitz else "0",
        ])

    @staticmethod
    def csv_header():
        return "prime,degree,a_p,eps,charpoly,d,e,cyclic,koblitz"


def _mult_matrix(ext, elem):
    """Matrix of multiplication by elem on the monomial basis."""
    n = ext.n
    M = np.zeros((n, n), dtype=np.int64)
    col = elem.vec
    M[:, 0] = col
    for j in range(1, n):
        # multiply by T-bar: shift then reduce
        shifted = np.zeros(n + 1, dtype=np.int64)
        shifted[1:] = col
        col = ext._reduce(shifted)
        M[:, j] = col
    return M


def action_matrix(module, p=None):
    """Build the action matrix of the T-image on the residue field.

    Accepts a generic module plus a monic irreducible p, or an already
    reduced module (p ignored)."""
    if not module.reduced:
        module = reduce_mod(module, p)
    ext = module.ext
    ctx = ext.ctx
    F = ext.frob_matrix
    C = _mult_matrix(ext, ext.gen())
    M = ctx.mat_mul(_mult_matrix(ext, module.g), F)
    M = ctx.vadd(C, M)
    if module.rank == 2:
        F2 = ctx.mat_mul(F, F)
        M = ctx.vadd(M, ctx.mat_mul(_mult_matrix(ext, module.delta), F2))
    return ActionMatrix(ext, M)


def _hessenberg(ctx, A):
    """Similarity-reduce A to upper Hessenberg form over F_q."""
    H = np.array(A, dtype=np.int64)
    n = H.shape[0]
    for j in range(n - 2):
        # find pivot below the subdiagonal entry
        piv = None
        for i in range(j + 1, n):
            if H[i, j] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[[j + 1, piv]] = H[[piv, j + 1]]
            H[:, [j + 1, piv]] = H[:, [piv, j + 1]]
        inv = ctx.inv(int(H[j + 1, j]))
        for i in range(j + 2, n):
            f = ctx.mul(int(H[i, j]), inv)
            if f:
                H[i] = ctx.vsub(H[i], ctx.vmul(H[j + 1], f))
                H[:, j + 1] = ctx.vadd(H[:, j + 1], ctx.vmul(H[:, i], f))
    return H


def charpoly_generator(M):
    """Characteristic polynomial of the action matrix, as a monic PolyA in T.

    This is the monic generator of the order ideal of the residue field as
    an A-module under the reduced T-action."""
    ext = M.ext
    ctx = ext.ctx
    H = _hessenberg(ctx, M.mat)
    n = H.shape[0]
    # charpoly recurrence on the Hessenberg form
    polys = [PolyA.one(ctx)]
    T = PolyA.T(ctx)
    for m in range(1, n + 1):
        pm = (T - PolyA.constant(ctx, int(H[m - 1, m - 1]))) * polys[m - 1]
        beta = 1
        for i in range(m - 1, 0, -1):
            beta = ctx.mul(beta, int(H[i, i - 1]))
            term = ctx.mul(int(H[i - 1, m - 1]), beta)
            pm = pm - PolyA.constant(ctx, term) * polys[i - 1]
        polys.append(pm)
    return polys[n]


def eps_p(module, p):
    """The determinant unit: (-1)^deg(p) * N(Delta-bar)^(-1) for the
    tau^2 coefficient Delta = -T^(q-1); always 1 for that family."""
    ctx = module.ctx
    if module.reduced:
        raise ValueError("eps needs the generic module and the prime")
    q = ctx.q
    family = -(PolyA.T(ctx) ** (q - 1))
    if module.rank != 2 or module.delta != family:
        raise ValueError("unit formula only implemented for the "
                         "Delta = -T^(q-1) family")
    if p.degree() == 1 and p.coeffs[0] == 0:
        raise FieldError("the prime T is excluded (norm of zero)")
    red = reduce_mod(module, p)
    ext = red.ext
    nval = norm(red.delta).in_base()
    if nval is None or nval == 0:
        raise InternalConsistencyError("norm of the top coefficient vanished")
    sign = 1 if p.degree() % 2 == 0 else ctx.neg(1)
    return ctx.mul(sign, ctx.inv(nval))


def a_p(module, p):
    """Frobenius trace from the action-matrix characteristic polynomial:
    a = 1 + eps*p - eps*N with N the charpoly generator."""
    eps = eps_p(module, p)
    N = charpoly_generator(action_matrix(module, p))
    ctx = module.ctx
    a = PolyA.one(ctx) + eps * p - eps * N
    if 2 * a.degree() > p.degree():
        raise InternalConsistencyError(
            f"trace bound violated at {format_poly(p)}: a = {format_poly(a)}")
    return a


def _minpoly_vector(ctx, M, v, charpoly):
    """Minimal polynomial of the vector v under M (Krylov)."""
    n = M.shape[0]
    rows = [np.array(v, dtype=np.int64)]
    cur = v
    for _ in range(n):
        cur = ctx.mat_vec(M, cur)
        rows.append(np.array(cur, dtype=np.int64))
    K = np.stack(rows)  # (n+1, n): row i = M^i v
    # first dependency: smallest m with rows[0..m] dependent
    R, pivots = gauss_reduce(ctx, K.T)
    # columns of K.T are the Krylov vectors; first non-pivot column gives m
    m = 0
    for j in range(n + 1):
        if j not in pivots:
            m = j
            break
    # solve sum_{i<m} c_i M^i v = -M^m v
    A = K[:m].T
    b = np.array([ctx.neg(int(x)) for x in K[m]], dtype=np.int64)
    from .field import solve
    coeffs = solve(ctx, A, b)
    return PolyA(ctx, [int(c) for c in coeffs] + [1])


def minimal_polynomial(M):
    """Minimal polynomial of the action matrix (lcm of vector minpolys)."""
    ext = M.ext
    ctx = ext.ctx
    n = M.mat.shape[0]
    cp = None
    m = PolyA.one(ctx)
    for j in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[j] = 1
        mv = _minpoly_vector(ctx, M.mat, v, cp)
        g = m.gcd(mv)
        m = (m * mv) // g
        if m.degree() == n:
            break
    return m


def module_structure(M, charpoly=None):
    """Invariant factors (d, e) with the module isomorphic to
    A/(d) x A/(d*e); charpoly = d^2 * e."""
    if charpoly is None:
        charpoly = charpoly_generator(M)
    m = minimal_polynomial(M)
    d, r = divmod(charpoly, m)
    if not r.is_zero():
        raise InternalConsistencyError("minimal polynomial does not divide "
                                       "the characteristic polynomial")
    e, r = divmod(m, d)
    if not r.is_zero():
        raise InternalConsistencyError(
            "module has more than two invariant factors")
    return d.monic(), e.monic()


def half_coeff(module, p, sign=None):
    """Independent value of the top (degree n/2) coefficient of a_p for
    even-degree primes, via the trace/norm formula on the residue field.

    The overall sign is resolved against the matrix method once per module
    family (see resolve_half_sign); pass sign=+1/-1 to skip resolution."""
    n = p.degree()
    if n % 2 != 0:
        raise ValueError("the closed form needs an even-degree prime")
    red = module if module.reduced else reduce_mod(module, p)
    ext = red.ext
    if ext.n != n:
        raise ValueError("reduced module does not match the prime")
    ctx = ext.ctx
    tbar = ext.gen()
    beta = -(tbar ** (ctx.q - 1))
    alpha = norm(beta, target="quad").inverse()
    val = alpha + frob(alpha, 1)  # trace from the quadratic subfield
    base = val.in_base()
    if base is None:
        raise InternalConsistencyError("subfield trace not in the base field")
    if sign is None:
        sign = 1
    return base if sign == 1 else ctx.neg(base)


def resolve_half_sign(module):
    """Fix the sign of the closed-form half coefficient against the matrix
    method on the canonically first degree-2 prime."""
    from .polyring import irreducibles
    ctx = module.ctx
    for p in irreducibles(ctx, 2):
        a = a_p(module, p)
        want = a.coeffs[1] if a.degree() >= 1 else 0
        got = half_coeff(module, p, sign=1)
        if got == want:
            return 1
        if ctx.neg(got) == want:
            return -1
        raise InternalConsistencyError("half-coefficient formula does not "
                                       "match the matrix method up to sign")
    raise InternalConsistencyError("no degree-2 prime found")


def prime_record(module, p, half_sign=None):
    """Full PrimeRecord for a good prime (p != T) of the default family."""
    eps = eps_p(module, p)
    M = action_matrix(module, p)
    N = charpoly_generator(M)
    ctx = module.ctx
    a = PolyA.one(ctx) + eps * p - eps * N
    if 2 * a.degree() > p.degree():
        raise InternalConsistencyError("trace bound violated")
    d, e = module_structure(M, N)
    return PrimeRecord(
        prime=p, degree=p.degree(), a_p=a, eps=eps, charpoly=N,
        d=d, e=e, cyclic=(d.degree() == 0), koblitz=N.is_irreducible(),
    )
