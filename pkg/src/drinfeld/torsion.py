"""Independent recovery of the Frobenius trace from torsion points.

For a good prime p and auxiliary primes lambda, the lambda-torsion of the
reduced module is a 2-dimensional vector space over F_q[T]/(lambda) living
in a finite tower extension of the residue field.  The q^deg(p)-power
Frobenius acts on it by a 2x2 matrix whose trace is a_p mod lambda and
whose determinant is p mod lambda.  Collecting enough lambdas and applying
the Chinese remainder theorem pins down a_p exactly, with no reference to
the action-matrix characteristic polynomial.
"""

from __future__ import annotations

import numpy as np

from .field import ext_ctx, gauss_reduce, nullspace, solve
from .polyring import PolyA, format_poly, irreducibles
from .skew import DrinfeldModule, reduce_mod


class SearchLimitError(RuntimeError):
    """No tower within the degree cap contains the requested torsion."""


DEFAULT_TOWER_CAP = 240


class TowerCtx:
    """F_p[Y]/(h): a degree-m field extension of a residue field ext,
    handled as an F_q-vector space of dimension m * deg(p).

    Elements are numpy vectors; the basis is T^a * Y^b with index b*n + a.
    """

    def __init__(self, ext, h):
        self.ext = ext
        self.ctx = ext.ctx
        self.n = ext.n
        self.m = len(h) - 1
        self.dim = self.n * self.m
        self.h = h  # monic: list of m+1 raw coefficient vectors over ext
        self.frob_mat = self._build_frob()
        self._frob_pows = {0: np.eye(self.dim, dtype=np.int64), 1: self.frob_mat}

    # -- raw polynomial arithmetic over ext (lists of coefficient vecs) --

    def _pmul(self, a, b):
        ext = self.ext
        out = [np.zeros(self.n, dtype=np.int64) for _ in range(len(a) + len(b) - 1)]
        for i, ai in enumerate(a):
            if not ai.any():
                continue
            for j, bj in enumerate(b):
                if not bj.any():
                    continue
                out[i + j] = self.ctx.vadd(out[i + j], ext._mulvec(ai, bj))
        return out

    def _pmod(self, a):
        ext = self.ext
        a = [np.array(c, dtype=np.int64) for c in a]
        m = self.m
        while len(a) > m:
            lead = a[-1]
            if lead.any():
                shift = len(a) - 1 - m
                for i in range(m):
                    t = ext._mulvec(lead, self.h[i])
                    a[shift + i] = self.ctx.vsub(a[shift + i], t)
            a.pop()
        while len(a) < m:
            a.append(np.zeros(self.n, dtype=np.int64))
        return a

    def _to_vec(self, coeffs):
        v = np.zeros(self.dim, dtype=np.int64)
        for b, c in enumerate(coeffs):
            v[b * self.n:(b + 1) * self.n] = c
        return v

    def _to_coeffs(self, v):
        return [np.array(v[b * self.n:(b + 1) * self.n], dtype=np.int64)
                for b in range(self.m)]

    def mul_vec(self, u, v):
        return self._to_vec(self._pmod(self._pmul(self._to_coeffs(u), self._to_coeffs(v))))

    def embed(self, x):
        """An ExtFieldElem of the base residue field as a tower vector."""
        v = np.zeros(self.dim, dtype=np.int64)
        v[:self.n] = x.vec
        return v

    def one(self):
        return self.embed(self.ext.one())

    def gen_Y(self):
        v = np.zeros(self.dim, dtype=np.int64)
        if self.m == 1:
            # Y is a root of the linear h: Y = -h[0]
            v[:self.n] = self.ctx.vneg(self.h[0])
        else:
            v[self.n] = 1
        return v

    def scalar_mult_matrix(self, c):
        """Multiplication by a residue-field element: block diagonal."""
        from .frobenius import _mult_matrix
        block = _mult_matrix(self.ext, c)
        return np.kron(np.eye(self.m, dtype=np.int64), block)

    def mult_matrix(self, u):
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        cu = self._to_coeffs(u)
        for b in range(self.m):
            for a in range(self.n):
                basis = [np.zeros(self.n, dtype=np.int64) for _ in range(b + 1)]
                basis[b][a] = 1
                M[:, b * self.n + a] = self._to_vec(self._pmod(self._pmul(cu, basis)))
        return M

    def _build_frob(self):
        """Matrix of x -> x^q on the F_q-basis."""
        ext = self.ext
        # Y^q mod h by square-and-multiply on the exponent q
        yq = self._ypow_mod(self.ctx.q)
        F = np.zeros((self.dim, self.dim), dtype=np.int64)
        cur = [np.zeros(self.n, dtype=np.int64) for _ in range(self.m)]
        cur[0] = np.array(ext.one().vec, dtype=np.int64)
        for b in range(self.m):
            for a in range(self.n):
                # (T^a Y^b)^q = frob(T^a) * (Y^q)^b
                ta = np.zeros(self.n, dtype=np.int64)
                ta[a] = 1
                taq = self.ctx.mat_vec(ext.frob_matrix, ta)
                col = [ext._mulvec(taq, c) for c in cur]
                F[:, b * self.n + a] = self._to_vec(col)
            cur = self._pmod(self._pmul(cur, yq))
        return F

    def _ypow_mod(self, e):
        one = [np.zeros(self.n, dtype=np.int64) for _ in range(max(self.m, 1))]
        one[0] = np.array(self.ext.one().vec, dtype=np.int64)
        if self.m == 1:
            base = [self.ctx.vneg(np.array(self.h[0], dtype=np.int64))]
        else:
            base = [np.zeros(self.n, dtype=np.int64) for _ in range(self.m)]
            base[1][0] = 1
        acc = one
        while e:
            if e & 1:
                acc = self._pmod(self._pmul(acc, base))
            e >>= 1
            if e:
                base = self._pmod(self._pmul(base, base))
        return acc

    def frob_pow(self, k):
        if k not in self._frob_pows:
            half = self.frob_pow(k // 2)
            M = self.ctx.mat_mul(half, half)
            if k & 1:
                M = self.ctx.mat_mul(M, self.frob_mat)
            self._frob_pows[k] = M
        return self._frob_pows[k]


def _random_monic(ext, m, rng):
    vecs = []
    for _ in range(m):
        v = np.array([int(rng.integers(ext.ctx.q)) for _ in range(ext.n)],
                     dtype=np.int64)
        vecs.append(v)
    one = np.array(ext.one().vec, dtype=np.int64)
    return vecs + [one]


def _is_irreducible_over_ext(ext, h, rng_unused=None):
    """Irreducibility of h over the residue field, via the Q-power map
    (Q = field size) on the quotient algebra; works even when h splits."""
    tw = TowerCtx(ext, h)
    m = tw.m
    if m == 1:
        return True
    B = tw.frob_pow(tw.n)  # x -> x^Q
    y = tw.gen_Y()
    ctx = tw.ctx
    # Y^(Q^j) for j = 1..m
    powers = [y]
    cur = y
    for _ in range(m):
        cur = ctx.mat_vec(B, cur)
        powers.append(cur)
    if not np.array_equal(powers[m], y):
        return False
    for r in _prime_divisors(m):
        diff = ctx.vsub(powers[m // r], y)
        if not _coprime_to_h(tw, diff):
            return False
    return True


def _prime_divisors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _coprime_to_h(tw, v):
    """gcd(v(Y), h) = 1 over the residue field, v given as a tower vector."""
    ext = tw.ext
    a = [list(c) for c in tw.h]
    b = [list(c) for c in tw._to_coeffs(v)]
    a = [np.array(c, dtype=np.int64) for c in a]
    b = [np.array(c, dtype=np.int64) for c in b]

    def trim(f):
        while f and not f[-1].any():
            f.pop()
        return f

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        binv = ext._invvec(b[-1])
        while len(a) >= len(b):
            lead = ext._mulvec(a[-1], binv)
            if lead.any():
                shift = len(a) - len(b)
                for i in range(len(b)):
                    a[shift + i] = tw.ctx.vsub(a[shift + i], ext._mulvec(lead, b[i]))
            a.pop()
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def build_tower(ext, m, seed=0):
    """A degree-m field extension of the residue field; cached per residue
    field since the torsion search revisits the same degrees."""
    cache = getattr(ext, "_tower_cache", None)
    if cache is None:
        cache = {}
        ext._tower_cache = cache
    key = (m, seed)
    if key in cache:
        return cache[key]
    tw = _build_tower_uncached(ext, m, seed)
    cache[key] = tw
    return tw


def _build_tower_uncached(ext, m, seed=0):
    if m == 1:
        # Y - T: identity extension keeps the code paths uniform
        h = [ext.ctx.vneg(np.array(ext.gen().vec, dtype=np.int64)),
             np.array(ext.one().vec, dtype=np.int64)]
        return TowerCtx(ext, h)
    h = _binomial_modulus(ext, m, seed)
    if h is not None:
        return TowerCtx(ext, h)
    rng = np.random.default_rng((seed, ext.n, m))
    for _ in range(60 * m):
        h = _random_monic(ext, m, rng)
        if _is_irreducible_over_ext(ext, h):
            return TowerCtx(ext, h)
    raise SearchLimitError(f"no irreducible degree-{m} polynomial found")


def _binomial_modulus(ext, m, seed):
    """Y^m - gamma, irreducible when m divides Q-1, gamma is an ell-th
    power nonresidue for every prime ell dividing m, and 4 | m forces
    Q = 1 mod 4 (standard binomial irreducibility criterion)."""
    Q = ext.ctx.q ** ext.n
    if (Q - 1) % m != 0 or (m % 4 == 0 and Q % 4 != 1):
        return None
    ells = _prime_divisors(m)
    rng = np.random.default_rng((seed, ext.n, m, 17))
    one = np.array(ext.one().vec, dtype=np.int64)
    for _ in range(200):
        gvec = np.array([int(rng.integers(ext.ctx.q)) for _ in range(ext.n)],
                        dtype=np.int64)
        if not gvec.any():
            continue
        ok = True
        for ell in ells:
            if np.array_equal(ext._powvec(gvec, (Q - 1) // ell), one):
                ok = False
                break
        if ok:
            h = [np.zeros(ext.n, dtype=np.int64) for _ in range(m)]
            h[0] = ext.ctx.vneg(gvec)
            return h + [one]
    return None


class TowerElem:
    """Thin wrapper so tower points work with additive_eval."""

    __slots__ = ("tw", "vec")

    def __init__(self, tw, vec):
        self.tw = tw
        self.vec = np.array(vec, dtype=np.int64)

    def __add__(self, other):
        return TowerElem(self.tw, self.tw.ctx.vadd(self.vec, other.vec))

    def __sub__(self, other):
        return TowerElem(self.tw, self.tw.ctx.vsub(self.vec, other.vec))

    def __mul__(self, other):
        return TowerElem(self.tw, self.tw.mul_vec(self.vec, other.vec))

    def __eq__(self, other):
        return isinstance(other, TowerElem) and np.array_equal(self.vec, other.vec)

    def is_zero(self):
        return not self.vec.any()

    def frob(self, k=1):
        return TowerElem(self.tw, self.tw.ctx.mat_vec(self.tw.frob_pow(k), self.vec))


def _additive_map_matrix(tw, skew):
    """Matrix on the tower of x -> sum c_i x^(q^i), coefficients c_i taken
    from the residue field."""
    ctx = tw.ctx
    M = np.zeros((tw.dim, tw.dim), dtype=np.int64)
    for i, c in enumerate(skew.coeffs):
        if c.is_zero():
            continue
        term = ctx.mat_mul(tw.scalar_mult_matrix(c), tw.frob_pow(i))
        M = ctx.vadd(M, term)
    return M


def _ext_mat_mul(ext, A, B):
    k = len(A)
    out = [[ext.zero() for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            acc = ext.zero()
            for l in range(k):
                acc = acc + A[i][l] * B[l][j]
            out[i][j] = acc
    return out


def _splitting_degree(red, phi_lam, candidates):
    """Exact extension degree over which the torsion splits.

    The coordinate vector (x, x^q, ..., x^(q^(k-1))) of a torsion point is
    sent by x -> x^q to B * w(x) with B the companion matrix of the defining
    additive recurrence; the image satisfies the recurrence with q-power
    twisted coefficients, so the q^n-Frobenius acts through the twisted
    product C = B^(q^(n-1)) ... B^(q) B and the splitting degree is the
    multiplicative order of C (torsion coordinate vectors span by the Moore
    determinant)."""
    from .field import frob as field_frob
    ext = red.ext
    coeffs = list(phi_lam.coeffs)
    k = len(coeffs) - 1
    if k == 0:
        return None
    top_inv = coeffs[k].inverse()
    zero, one = ext.zero(), ext.one()
    B = [[zero for _ in range(k)] for _ in range(k)]
    for j in range(1, k):
        B[j - 1][j] = one
    for i in range(k):
        B[k - 1][i] = zero - top_inv * coeffs[i]
    C = B
    for j in range(1, ext.n):
        Bj = [[field_frob(B[a][b], j) for b in range(k)] for a in range(k)]
        C = _ext_mat_mul(ext, Bj, C)
    ident = [[one if i == j else zero for j in range(k)] for i in range(k)]

    def is_ident(M):
        return all(M[i][j] == ident[i][j] for i in range(k) for j in range(k))

    powers = {1: C}

    def cpow(m):
        if m not in powers:
            h = cpow(m // 2)
            M = _ext_mat_mul(ext, h, h)
            if m & 1:
                M = _ext_mat_mul(ext, M, C)
            powers[m] = M
        return powers[m]

    for m in candidates:
        if is_ident(cpow(m)):
            return m
    return None


def torsion_space(module, p, lam, cap=DEFAULT_TOWER_CAP, seed=0):
    """Smallest tower containing the full lambda-torsion, with an F_q-basis
    of the torsion and the matrix of the T-action.

    Returns (tower, kernel_basis, M_T); kernel_basis has 'rank * deg(lam)'
    columns with rank = the module rank."""
    red = module if module.reduced else reduce_mod(module, p)
    if lam.monic() == p.monic():
        raise ValueError("auxiliary prime must differ from the reduction prime")
    want = red.rank * lam.degree()
    phi_lam = red.phi_image(lam)
    phi_t = red.phi_T()
    ctx = module.ctx
    cands = _candidate_degrees(ctx.q, ctx.p, lam.degree(), cap)
    hint = _splitting_degree(red, phi_lam, cands)
    if hint is not None:
        # exact degree known; keep the scan as a safety net behind it
        cands = [hint] + [m for m in cands if m != hint]
    for m in cands:
        tw = build_tower(red.ext, m, seed=seed)
        K = _additive_map_matrix(tw, phi_lam)
        basis = nullspace(tw.ctx, K)
        if len(basis) == want:
            MT = getattr(tw, "_phi_t_matrix", None)
            if MT is None:
                MT = _additive_map_matrix(tw, phi_t)
                tw._phi_t_matrix = MT
            return tw, basis, MT
        if len(basis) > want:
            raise SearchLimitError("torsion larger than the module rank allows")
    raise SearchLimitError(
        f"lambda-torsion not contained in any tower of degree <= {cap}")


def _candidate_degrees(q, p, r, cap):
    """Possible splitting degrees of the lambda-torsion over the residue
    field: orders of elements of GL_2 over the field with q^r elements
    divide q^(2r)-1 or p*(q^r-1)."""
    Q = q ** r
    cand = set()
    for bound in (Q * Q - 1, p * (Q - 1)):
        d = 1
        while d * d <= bound:
            if bound % d == 0:
                if d <= cap:
                    cand.add(d)
                if bound // d <= cap:
                    cand.add(bound // d)
            d += 1
    return sorted(cand)


def _orbit(ctx, MT, v, r):
    cols = [np.array(v, dtype=np.int64)]
    for _ in range(r - 1):
        cols.append(ctx.mat_vec(MT, cols[-1]))
    return cols


def frob_matrix_mod_lambda(module, p, lam, cap=DEFAULT_TOWER_CAP, seed=0):
    """2x2 matrix of the q^deg(p)-power Frobenius on the lambda-torsion,
    entries as polynomials of degree < deg(lam) (residues mod lambda)."""
    red = module if module.reduced else reduce_mod(module, p)
    if red.rank != 2:
        raise ValueError("Frobenius matrix wants a rank-2 module")
    tw, basis, MT = torsion_space(red, p, lam, cap=cap, seed=seed)
    ctx = tw.ctx
    r = lam.degree()
    # A/(lam)-basis: any nonzero v1, then a kernel vector outside its span
    v1 = basis[0]
    cols1 = _orbit(ctx, MT, v1, r)
    B = np.stack(cols1, axis=1)
    _, pivots = gauss_reduce(ctx, B)
    if len(pivots) != r:
        raise SearchLimitError("torsion is not free over the residue ring")
    v2 = None
    for w in basis[1:]:
        test = np.concatenate([B, w[:, None]], axis=1)
        _, piv2 = gauss_reduce(ctx, test)
        if len(piv2) == r + 1:
            v2 = w
            break
    if v2 is None:
        raise SearchLimitError("no second basis vector for the torsion")
    cols2 = _orbit(ctx, MT, v2, r)
    full = np.stack(cols1 + cols2, axis=1)
    F = tw.frob_pow(red.ext.n)
    entries = [[None, None], [None, None]]
    for j, v in enumerate((v1, v2)):
        img = ctx.mat_vec(F, v)
        coeffs = solve(ctx, full, img)
        entries[0][j] = PolyA(module.ctx, [int(c) for c in coeffs[:r]])
        entries[1][j] = PolyA(module.ctx, [int(c) for c in coeffs[r:]])
    return entries


def frob_trace_det_mod(module, p, lam, cap=DEFAULT_TOWER_CAP, seed=0,
                       check_det=True):
    """(trace, det) of the Frobenius on the lambda-torsion, reduced mod
    lambda; det is checked against p mod lambda (the unit is 1 for the
    default family; pass check_det=False for other families)."""
    E = frob_matrix_mod_lambda(module, p, lam, cap=cap, seed=seed)
    tr = (E[0][0] + E[1][1]) % lam
    det = (E[0][0] * E[1][1] - E[0][1] * E[1][0]) % lam
    if check_det and det != p % lam:
        raise SearchLimitError(
            f"determinant mismatch on the {format_poly(lam)}-torsion")
    return tr, det


def crt(ctx, residues, moduli):
    """Polynomial Chinese remainder over F_q[T] (pairwise coprime moduli)."""
    acc, mod = residues[0] % moduli[0], moduli[0]
    for r, m in zip(residues[1:], moduli[1:]):
        # acc + mod * t == r (mod m)
        g, s, _ = _ext_gcd(mod, m)
        if g.degree() != 0:
            raise ValueError("moduli are not coprime")
        ginv = ctx.inv(g.coeffs[0])
        t = (((r - acc) * s) * ginv) % m
        acc = acc + mod * t
        mod = mod * m
        acc = acc % mod
    return acc


def _ext_gcd(a, b):
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = PolyA.one(ctx), PolyA.zero(ctx)
    t0, t1 = PolyA.zero(ctx), PolyA.one(ctx)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def default_lambdas(ctx, p):
    """Degree-1 auxiliary primes distinct from p, enough to cover the trace
    degree bound deg(a) <= deg(p)/2."""
    need = p.degree() // 2 + 1
    out = []
    for lam in irreducibles(ctx, 1):
        if lam.monic() == p.monic():
            continue
        out.append(lam)
        if len(out) >= need:
            return out
    for lam in irreducibles(ctx, 2):
        out.append(lam)
        if sum(l.degree() for l in out) >= need:
            return out
    raise SearchLimitError("not enough auxiliary primes")


def reconstruct_a(module, p, lambdas=None, cap=DEFAULT_TOWER_CAP, seed=0):
    """a_p by torsion only: Frobenius traces mod several lambdas, then CRT.

    The auxiliary degrees must sum past deg(p)/2 so the bound deg(a_p) <=
    deg(p)/2 makes the lift unique."""
    ctx = module.ctx
    if lambdas is None:
        lambdas = default_lambdas(ctx, p)
    if sum(l.degree() for l in lambdas) <= p.degree() // 2:
        raise ValueError("auxiliary primes do not determine the trace")
    from .skew import is_default_rank2, reduce_mod
    check_det = is_default_rank2(module)
    red = module if module.reduced else reduce_mod(module, p)
    residues = []
    for lam in lambdas:
        tr, _ = frob_trace_det_mod(red, p, lam, cap=cap, seed=seed,
                                   check_det=check_det)
        residues.append(tr)
    a = crt(ctx, residues, lambdas)
    if 2 * a.degree() > p.degree():
        raise SearchLimitError("reconstructed trace violates the degree bound")
    return a


def carlitz_scalar(module, p, lam, cap=DEFAULT_TOWER_CAP, seed=0):
    """Scalar of the Frobenius action on the lambda-torsion of a rank-1
    module; equals p mod lambda for the T + tau module."""
    red = module if module.reduced else reduce_mod(module, p)
    if red.rank != 1:
        raise ValueError("scalar action wants a rank-1 module")
    tw, basis, MT = torsion_space(red, p, lam, cap=cap, seed=seed)
    ctx = tw.ctx
    r = lam.degree()
    v1 = basis[0]
    cols = _orbit(ctx, MT, v1, r)
    B = np.stack(cols, axis=1)
    F = tw.frob_pow(red.ext.n)
    img = ctx.mat_vec(F, v1)
    coeffs = solve(ctx, B, img)
    return PolyA(module.ctx, [int(c) for c in coeffs])
