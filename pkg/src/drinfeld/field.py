"""Arithmetic for the base field F_q (q = p^s, p odd, q >= 5) and its
extensions F_q[T]/(p).

Base-field elements are encoded as python ints in [0, q).  For s = 1 this is
the usual residue; for s > 1 the base-p digits of the int are the coefficients
of the element written in the power basis of a fixed defining polynomial.
Extension-field elements carry a coefficient vector of length n = deg(modulus)
over F_q, with a precomputed matrix for x -> x^q.
"""

from __future__ import annotations

import numpy as np


class FieldError(ValueError):
    """Invalid field construction or operation."""


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- tiny F_p[x] helpers used only to build s > 1 contexts ------------------

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                c[i + j] = (c[i + j] + ai * bj) % p
    return _fp_trim(c)


def _fp_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and _fp_trim(a):
        if not a:
            break
        k = len(a) - 1 - dm
        f = (a[-1] * inv_lead) % p
        for i, mi in enumerate(m):
            a[i + k] = (a[i + k] - f * mi) % p
        _fp_trim(a)
    return a


def _fp_is_irreducible(f, p):
    # brute-force: no monic factor of degree <= deg f / 2
    n = len(f) - 1
    if n <= 0:
        return False
    for d in range(1, n // 2 + 1):
        for idx in range(p ** d):
            g = [(idx // p ** i) % p for i in range(d)] + [1]
            a = list(f)
            # remainder of f by g
            r = _fp_mod(a, g, p)
            if not r:
                return False
    return True


def _smallest_irreducible_fp(p, s):
    """Monic irreducible of degree s over F_p, lexicographically smallest on
    the coefficient vector read from the leading coefficient down."""
    for idx in range(p ** s):
        # digits of idx, most significant digit = coefficient of x^(s-1)
        coeffs = [0] * s
        for j in range(s):
            coeffs[s - 1 - j] = (idx // p ** (s - 1 - j)) % p
        cand = coeffs + [1]
        if _fp_is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """Context for F_q with q = p^s.  Immutable after construction."""

    def __init__(self, p, s=1):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if p == 2:
            raise FieldError("q must be odd")
        if s < 1:
            raise FieldError("extension degree must be positive")
        q = p ** s
        if q < 5:
            raise FieldError(f"q = {q} < 5 violates the standing hypothesis")
        self.p = p
        self.s = s
        self.q = q
        if s == 1:
            self.defining = None
            self._mul_table = None
            self._inv_table = None
        else:
            self.defining = _smallest_irreducible_fp(p, s)
            self._build_tables()

    def _build_tables(self):
        p, s, q = self.p, self.s, self.q
        m = list(self.defining)

        def decode(a):
            return [(a // p ** i) % p for i in range(s)]

        def encode(v):
            return sum(int(v[i]) % p * p ** i for i in range(min(len(v), s)))

        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            va = _fp_trim(decode(a))
            for b in range(a, q):
                vb = _fp_trim(decode(b))
                prod = _fp_mod(_fp_mul(va, vb, p), m, p)
                val = encode(prod + [0] * s)
                mul[a, b] = val
                mul[b, a] = val
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            b = int(np.nonzero(mul[a] == 1)[0][0])
            inv[a] = b
        self._mul_table = mul
        self._inv_table = inv

    # -- scalar ops ---------------------------------------------------------

    def add(self, a, b):
        if self.s == 1:
            return (a + b) % self.p
        p = self.p
        r = 0
        for i in range(self.s):
            r += (((a // p ** i) + (b // p ** i)) % p) * p ** i
        return r

    def neg(self, a):
        if self.s == 1:
            return (-a) % self.p
        p = self.p
        r = 0
        for i in range(self.s):
            r += ((-(a // p ** i)) % p) * p ** i
        return r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.s == 1:
            return (a * b) % self.p
        return int(self._mul_table[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._inv_table[a])

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def element(self, a):
        """Canonicalize an integer into the field (reduce mod p digit-wise)."""
        if self.s == 1:
            return int(a) % self.p
        # interpret out-of-range ints via their base-p digits mod p
        return int(a) % self.q

    # -- vector ops (numpy arrays of encoded elements) ----------------------

    def vadd(self, a, b):
        if self.s == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        p = self.p
        for i in range(self.s):
            out += (((a // p ** i) + (b // p ** i)) % p) * p ** i
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vneg(self, a):
        if self.s == 1:
            return (-a) % self.p
        out = np.zeros(np.shape(a), dtype=np.int64)
        p = self.p
        for i in range(self.s):
            out += ((-(a // p ** i)) % p) * p ** i
        return out

    def vmul(self, a, b):
        if self.s == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return self._mul_table[a, b]

    def mat_mul(self, A, B):
        """Matrix product over F_q."""
        if self.s == 1:
            return (np.matmul(A, B)) % self.p
        A = np.asarray(A)
        B = np.asarray(B)
        out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        for k in range(A.shape[-1]):
            out = self.vadd(out, self.vmul(A[..., :, k, None], B[..., k, None, :]))
        return out

    def mat_vec(self, A, v):
        return self.mat_mul(A, np.asarray(v)[..., None])[..., 0]

    def mat_pow(self, A, e):
        n = A.shape[-1]
        R = np.eye(n, dtype=np.int64)
        base = A
        e = int(e)
        while e:
            if e & 1:
                R = self.mat_mul(R, base)
            base = self.mat_mul(base, base)
            e >>= 1
        return R

    def __repr__(self):
        if self.s == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.q} = F_{self.p}^{self.s})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.s) == (other.p, other.s))

    def __hash__(self):
        return hash((self.p, self.s))


def field_ctx(p, s=1):
    """Build a base-field context, enforcing the odd q >= 5 hypothesis."""
    return FieldCtx(p, s)


# -- linear algebra over F_q ------------------------------------------------

def gauss_reduce(ctx, M):
    """Row echelon form (in place on a copy); returns (R, pivot_cols)."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if M[i, c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        inv = ctx.inv(int(M[r, c]))
        M[r] = ctx.vmul(M[r], inv)
        for i in range(rows):
            if i != r and M[i, c] != 0:
                M[i] = ctx.vsub(M[i], ctx.vmul(M[r], int(M[i, c])))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def nullspace(ctx, M):
    """Basis (list of vectors) of the right kernel of M over F_q."""
    R, pivots = gauss_reduce(ctx, M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = ctx.neg(int(R[r, f]))
        basis.append(v)
    return basis


def solve(ctx, A, b):
    """Solve A x = b; raises FieldError if inconsistent."""
    A = np.asarray(A)
    b = np.asarray(b)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = gauss_reduce(ctx, aug)
    cols = A.shape[1]
    if cols in pivots:
        raise FieldError("inconsistent linear system")
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def mat_inv(ctx, A):
    n = A.shape[0]
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = gauss_reduce(ctx, aug)
    if pivots != list(range(n)):
        raise FieldError("matrix is singular")
    return R[:, n:]


# -- extension field F_q[T]/(p) ---------------------------------------------

class ExtFieldElem:
    """Element of F_q[T]/(modulus): coefficient vector of degree < n."""

    __slots__ = ("ext", "vec")

    def __init__(self, ext, vec):
        self.ext = ext
        self.vec = np.asarray(vec, dtype=np.int64)

    def _check(self, other):
        if self.ext is not other.ext:
            raise FieldError("elements from different extension contexts")

    def __add__(self, other):
        self._check(other)
        return ExtFieldElem(self.ext, self.ext.ctx.vadd(self.vec, other.vec))

    def __sub__(self, other):
        self._check(other)
        return ExtFieldElem(self.ext, self.ext.ctx.vsub(self.vec, other.vec))

    def __neg__(self):
        return ExtFieldElem(self.ext, self.ext.ctx.vneg(self.vec))

    def __mul__(self, other):
        self._check(other)
        return ExtFieldElem(self.ext, self.ext._mulvec(self.vec, other.vec))

    def inverse(self):
        return ExtFieldElem(self.ext, self.ext._invvec(self.vec))

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        r = self.ext.one()
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def __eq__(self, other):
        return (isinstance(other, ExtFieldElem) and self.ext is other.ext
                and np.array_equal(self.vec, other.vec))

    def __hash__(self):
        return hash((id(self.ext), tuple(int(c) for c in self.vec)))

    def is_zero(self):
        return not self.vec.any()

    def in_base(self):
        """The base-field value if the element is a constant, else None."""
        if self.vec[1:].any():
            return None
        return int(self.vec[0])

    def __repr__(self):
        return f"ExtFieldElem({list(int(c) for c in self.vec)})"


class ExtFieldCtx:
    """F_q[T]/(modulus) with a precomputed q-power Frobenius matrix."""

    def __init__(self, ctx, modulus):
        if not modulus.is_monic():
            raise FieldError("modulus must be monic")
        if not modulus.is_irreducible():
            raise FieldError("modulus is reducible")
        self.ctx = ctx
        self.modulus = modulus
        self.n = modulus.degree()
        # low-degree coefficients of the monic modulus
        self._mlow = np.array(modulus.coeffs[:-1], dtype=np.int64)
        self.frob_matrix = self._build_frobenius()

    # dense poly helpers on raw coefficient vectors of length n
    def _reduce(self, c):
        """Reduce a coefficient vector of length >= n modulo the modulus."""
        ctx = self.ctx
        n = self.n
        c = np.array(c, dtype=np.int64)
        for j in range(len(c) - 1, n - 1, -1):
            t = int(c[j])
            if t:
                c[j - n:j] = ctx.vsub(c[j - n:j], ctx.vmul(self._mlow, t))
            c[j] = 0
        return c[:n]

    def _mulvec(self, a, b):
        ctx = self.ctx
        n = self.n
        c = np.zeros(2 * n - 1, dtype=np.int64)
        if ctx.s == 1:
            for i in range(n):
                if a[i]:
                    c[i:i + n] += int(a[i]) * b
            c %= ctx.p
        else:
            for i in range(n):
                c[i:i + n] = ctx.vadd(c[i:i + n], ctx.vmul(int(a[i]), b))
        return self._reduce(c)

    def _invvec(self, a):
        # extended Euclid in F_q[x] against the modulus
        ctx = self.ctx
        if not np.asarray(a).any():
            raise ZeroDivisionError("inverse of zero")
        r0 = list(int(x) for x in self.modulus.coeffs)
        r1 = [int(x) for x in a]
        while r1 and r1[-1] == 0:
            r1.pop()
        t0, t1 = [0], [1]

        def trim(u):
            while u and u[-1] == 0:
                u.pop()
            return u

        while len(r1) > 1 or (r1 and len(r0) > 1):
            # divide r0 by r1
            q = [0] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            inv_lead = ctx.inv(r1[-1])
            for k in range(len(rem) - len(r1), -1, -1):
                f = ctx.mul(rem[k + len(r1) - 1], inv_lead)
                q[k] = f
                if f:
                    for i, ci in enumerate(r1):
                        rem[k + i] = ctx.sub(rem[k + i], ctx.mul(f, ci))
            rem = trim(rem)
            # t0, t1 = t1, t0 - q*t1
            qt = [0] * (len(q) + len(t1) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, tj in enumerate(t1):
                        qt[i + j] = ctx.add(qt[i + j], ctx.mul(qi, tj))
            nt = [0] * max(len(t0), len(qt))
            for i in range(len(nt)):
                u = t0[i] if i < len(t0) else 0
                v = qt[i] if i < len(qt) else 0
                nt[i] = ctx.sub(u, v)
            r0, r1 = r1, rem
            t0, t1 = t1, trim(nt)
            if not r1:
                break
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible")
        c = ctx.inv(r0[0])
        out = np.zeros(self.n, dtype=np.int64)
        for i, ti in enumerate(t0):
            out[i] = ctx.mul(ti, c)
        return out

    def _build_frobenius(self):
        """Matrix of x -> x^q in the monomial basis 1, T, ..., T^(n-1)."""
        ctx = self.ctx
        n = self.n
        # T^q mod modulus by square-and-multiply on raw vectors
        if n == 1:
            # residue field is F_q itself; x -> x^q is the identity
            return np.array([[1]], dtype=np.int64)
        x = np.zeros(n, dtype=np.int64)
        x[1] = 1
        tq = self._powvec(x, ctx.q)
        M = np.zeros((n, n), dtype=np.int64)
        col = np.zeros(n, dtype=np.int64)
        col[0] = 1
        for j in range(n):
            M[:, j] = col
            col = self._mulvec(col, tq)
        return M

    def _powvec(self, a, e):
        r = np.zeros(self.n, dtype=np.int64)
        r[0] = 1
        base = np.array(a, dtype=np.int64)
        e = int(e)
        while e:
            if e & 1:
                r = self._mulvec(r, base)
            base = self._mulvec(base, base)
            e >>= 1
        return r

    # -- public API ---------------------------------------------------------

    def zero(self):
        return ExtFieldElem(self, np.zeros(self.n, dtype=np.int64))

    def one(self):
        v = np.zeros(self.n, dtype=np.int64)
        v[0] = 1
        return ExtFieldElem(self, v)

    def scalar(self, c):
        v = np.zeros(self.n, dtype=np.int64)
        v[0] = self.ctx.element(c)
        return ExtFieldElem(self, v)

    def gen(self):
        """The image T-bar of T."""
        v = np.zeros(self.n, dtype=np.int64)
        if self.n == 1:
            v[0] = self.ctx.neg(int(self._mlow[0]))
        else:
            v[1] = 1
        return ExtFieldElem(self, v)

    def element(self, vec):
        v = np.zeros(self.n, dtype=np.int64)
        vec = np.asarray(vec, dtype=np.int64)
        v[:len(vec)] = vec
        return ExtFieldElem(self, v)

    def __repr__(self):
        return f"ExtFieldCtx({self.modulus!r})"


def ext_ctx(ctx, modulus):
    """Build F_q[T]/(modulus) for a monic irreducible modulus."""
    return ExtFieldCtx(ctx, modulus)


def frob(x, k=1):
    """x^(q^k) via the precomputed Frobenius matrix."""
    ext = x.ext
    k = int(k) % ext.n if ext.n > 0 else 0
    v = x.vec
    for _ in range(k):
        v = ext.ctx.mat_vec(ext.frob_matrix, v)
    return ExtFieldElem(ext, v)


def norm(x, target="base"):
    """Norm to F_q (target='base') or to the F_{q^2} subfield ('quad').

    The quad norm is returned as an element of the ambient field that is
    fixed by the square of Frobenius; it requires even extension degree.
    """
    ext = x.ext
    n = ext.n
    if target == "base":
        r = ext.one()
        for i in range(n):
            r = r * frob(x, i)
        return r
    if target == "quad":
        if n % 2 != 0:
            raise FieldError("quadratic subfield requires even degree")
        r = ext.one()
        for i in range(n // 2):
            r = r * frob(x, 2 * i)
        return r
    raise FieldError(f"unknown norm target {target!r}")


def trace(x, target="base"):
    """Trace to F_q or to the F_{q^2} subfield (even degree only)."""
    ext = x.ext
    n = ext.n
    if target == "base":
        r = ext.zero()
        for i in range(n):
            r = r + frob(x, i)
        return r
    if target == "quad":
        if n % 2 != 0:
            raise FieldError("quadratic subfield requires even degree")
        r = ext.zero()
        for i in range(n // 2):
            r = r + frob(x, 2 * i)
        return r
    raise FieldError(f"unknown norm target {target!r}")


def norm_trace(x, target="base"):
    """(norm, trace) of x down to the requested target field."""
    return norm(x, target), trace(x, target)
