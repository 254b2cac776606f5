"""Arithmetic in A = F_q[T]: dense polynomials, irreducibility, enumeration
of monic irreducibles, the counting function pi_A, and the Moebius function.

The enumeration of monic irreducibles of degree n has two paths: a scalar
generator (any q) and a vectorized block filter (prime q) used for mass scans.
Both emit the canonical order: lexicographic on the coefficient vector read
from the leading coefficient down.
"""

from __future__ import annotations

import re

import numpy as np

from .field import FieldCtx, FieldError


class ParseError(ValueError):
    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")
        self.pos = pos


def _int_mobius(n):
    if n == 1:
        return 1
    m, r = n, 0
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            r += 1
        d += 1
    if m > 1:
        r += 1
    return (-1) ** r


def pi_count(q, n):
    """Number of monic irreducibles of degree n in F_q[T] (Moebius formula)."""
    if hasattr(q, "q"):
        q = q.q
    if n < 1:
        raise ValueError("degree must be >= 1")
    total = 0
    for e in range(1, n + 1):
        if n % e == 0:
            total += _int_mobius(e) * q ** (n // e)
    assert total % n == 0
    return total // n


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PolyA:
    """Dense polynomial over F_q in T; coefficients lowest degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        cs = [ctx.element(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ctx):
        return PolyA(ctx, ())

    @staticmethod
    def one(ctx):
        return PolyA(ctx, (1,))

    @staticmethod
    def T(ctx):
        return PolyA(ctx, (0, 1))

    @staticmethod
    def constant(ctx, c):
        return PolyA(ctx, (c,))

    # -- basic queries ------------------------------------------------------

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def key(self):
        """Canonical ordering key: (degree, coefficients leading-first)."""
        return (len(self.coeffs) - 1, tuple(reversed(self.coeffs)))

    def __eq__(self, other):
        return (isinstance(other, PolyA) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __lt__(self, other):
        return self.key() < other.key()

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise FieldError("mixed field contexts")

    def __add__(self, other):
        self._check(other)
        ctx = self.ctx
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return PolyA(ctx, [ctx.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other):
        self._check(other)
        ctx = self.ctx
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return PolyA(ctx, [ctx.sub(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        ctx = self.ctx
        return PolyA(ctx, [ctx.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            other = PolyA.constant(self.ctx, other)
        self._check(other)
        ctx = self.ctx
        if self.is_zero() or other.is_zero():
            return PolyA.zero(ctx)
        if ctx.s == 1 and len(self.coeffs) + len(other.coeffs) > 64:
            c = np.convolve(np.array(self.coeffs, dtype=np.int64),
                            np.array(other.coeffs, dtype=np.int64)) % ctx.p
            return PolyA(ctx, [int(v) for v in c])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
        return PolyA(ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        ctx = self.ctx
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        if self.degree() < db:
            return PolyA.zero(ctx), self
        quo = [0] * (self.degree() - db + 1)
        inv_lead = ctx.inv(other.leading())
        for k in range(len(quo) - 1, -1, -1):
            f = ctx.mul(rem[k + db], inv_lead)
            quo[k] = f
            if f:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = ctx.sub(rem[k + i], ctx.mul(f, b))
        return PolyA(ctx, quo), PolyA(ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = PolyA.one(self.ctx)
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def powmod(self, e, m):
        r = PolyA.one(self.ctx)
        base = self % m
        e = int(e)
        while e:
            if e & 1:
                r = (r * base) % m
            base = (base * base) % m
            e >>= 1
        return r

    def monic(self):
        if self.is_zero():
            return self
        ctx = self.ctx
        inv = ctx.inv(self.leading())
        return PolyA(ctx, [ctx.mul(c, inv) for c in self.coeffs])

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self):
        ctx = self.ctx
        return PolyA(ctx, [ctx.mul(c, i % ctx.p)
                           for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        """Horner evaluation; x is a base-field int or any object supporting
        +, * with scalar embedding via x's context."""
        if isinstance(x, int):
            ctx = self.ctx
            acc = 0
            for c in reversed(self.coeffs):
                acc = ctx.add(ctx.mul(acc, x), c)
            return acc
        # extension-field element
        ext = x.ext
        acc = ext.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + ext.scalar(c)
        return acc

    # -- irreducibility -----------------------------------------------------

    def is_squarefree(self):
        if self.degree() < 1:
            raise ValueError("squarefree test needs degree >= 1")
        d = self.derivative()
        if d.is_zero():
            return False  # a p-th power
        return self.gcd(d).degree() == 0

    def is_irreducible(self):
        n = self.degree()
        if n < 1:
            raise ValueError("irreducibility undefined for constants")
        if n == 1:
            return True
        if not self.is_squarefree():
            return False
        ctx = self.ctx
        q = ctx.q
        x = PolyA.T(ctx)
        # x^(q^n) = x mod f, and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n
        xq = x.powmod(q, self)
        powers = {1: xq}

        def get_power(k):
            # x^(q^k) mod f; X_(a+b) = X_a o X_b (coefficients Frobenius-fixed)
            if k not in powers:
                if k % 2 == 0:
                    h = get_power(k // 2)
                    powers[k] = h.compose_mod(h, self)
                else:
                    powers[k] = get_power(k - 1).compose_mod(xq, self)
            return powers[k]

        if get_power(n) != x % self:
            return False
        for ell in _prime_divisors(n):
            g = (get_power(n // ell) - x).gcd(self)
            if g.degree() != 0:
                return False
        return True

    def compose_mod(self, g, m):
        """self(g) mod m by Horner."""
        ctx = self.ctx
        acc = PolyA.zero(ctx)
        for c in reversed(self.coeffs):
            acc = (acc * g + PolyA.constant(ctx, c)) % m
        return acc

    # -- text format --------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"PolyA({format_poly(self)!r})"


def moebius_A(m):
    """Moebius function on monic polynomials: 0 if not squarefree, else
    (-1)^(number of irreducible factors)."""
    if m.is_zero() or not m.is_monic():
        raise ValueError("Moebius function needs a monic polynomial")
    if m.degree() == 0:
        return 1
    if not m.is_squarefree():
        return 0
    # count irreducible factors by distinct-degree splitting
    ctx = m.ctx
    q = ctx.q
    x = PolyA.T(ctx)
    g = m
    k = 0
    d = 0
    xq_mod = None
    cur = None
    while g.degree() >= 1:
        d += 1
        if d > g.degree():
            raise AssertionError("distinct-degree factorization ran away")
        if cur is None:
            xq_mod = x.powmod(q, m)
            cur = xq_mod
        else:
            cur = cur.compose_mod(xq_mod, m)
        h = (cur % g - x % g).gcd(g)
        if h.degree() > 0:
            assert h.degree() % d == 0
            k += h.degree() // d
            g = g // h
    return (-1) ** k


# -- text format ------------------------------------------------------------

def _format_base_coeff(ctx, c):
    if ctx.s == 1:
        return str(c)
    p = ctx.p
    terms = []
    for i in range(ctx.s - 1, -1, -1):
        d = (c // p ** i) % p
        if d == 0:
            continue
        if i == 0:
            terms.append(str(d))
        elif i == 1:
            terms.append("u" if d == 1 else f"{d}*u")
        else:
            terms.append(f"u^{i}" if d == 1 else f"{d}*u^{i}")
    if not terms:
        return "0"
    body = "+".join(terms)
    return f"({body})"


def format_poly(f, var="T"):
    """Canonical text form: sum of c*T^k terms, highest degree first."""
    if f.is_zero():
        return "0"
    ctx = f.ctx
    parts = []
    for k in range(f.degree(), -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        cs = _format_base_coeff(ctx, c)
        if k == 0:
            parts.append(cs)
        else:
            vk = var if k == 1 else f"{var}^{k}"
            if c == 1:
                parts.append(vk)
            else:
                parts.append(f"{cs}*{vk}")
    return "+".join(parts)


_TERM_RE = re.compile(
    r"""(?P<sign>[+-]?)\s*
        (?:
          (?P<coeff>\((?P<upoly>[^()]*)\)|\d+)\s*(?:\*\s*(?P<varA>T)(?:\^(?P<expA>\d+))?)?
          |
          (?P<varB>T)(?:\^(?P<expB>\d+))?
        )\s*""",
    re.VERBOSE,
)

_UTERM_RE = re.compile(
    r"""(?P<sign>[+-]?)\s*
        (?:
          (?P<coeff>\d+)\s*(?:\*\s*(?P<varA>u)(?:\^(?P<expA>\d+))?)?
          |
          (?P<varB>u)(?:\^(?P<expB>\d+))?
        )\s*""",
    re.VERBOSE,
)


def _parse_terms(text, regex, varnames=("A", "B")):
    pos = 0
    out = []
    first = True
    n = len(text)
    while pos < n:
        m = regex.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("syntax error", pos)
        sign = m.group("sign")
        if not first and sign == "":
            raise ParseError("expected + or - between terms", pos)
        coeff = m.group("coeff")
        exp = None
        if m.group("varA") is not None:
            exp = int(m.group("expA") or 1)
        elif m.group("varB") is not None:
            exp = int(m.group("expB") or 1)
        else:
            exp = 0
        out.append((sign or "+", coeff, exp, m.group("upoly") if "upoly" in regex.groupindex else None))
        pos = m.end()
        first = False
    if not out:
        raise ParseError("empty polynomial", 0)
    return out


def _parse_base_coeff(ctx, coeff, upoly):
    """Returns (value, reduced_flag)."""
    if coeff is None:
        return 1, False
    if upoly is not None:
        # parenthesized polynomial in u over F_p
        digits = [0] * ctx.s
        reduced = False
        for sign, c, e, _ in _parse_terms(upoly, _UTERM_RE):
            if e >= ctx.s:
                raise ParseError(f"u^{e} exceeds base-field degree")
            d = int(c) if c is not None else 1
            reduced = reduced or d >= ctx.p
            d %= ctx.p
            if sign == "-":
                d = (-d) % ctx.p
            digits[e] = (digits[e] + d) % ctx.p
        return sum(d * ctx.p ** i for i, d in enumerate(digits)), reduced
    v = int(coeff)
    return v % ctx.p, v >= ctx.p


def parse_poly(ctx, text):
    """Parse the canonical text grammar into a PolyA.

    Returns the polynomial; out-of-range coefficients are reduced mod p.
    """
    poly, _warn = parse_poly_checked(ctx, text)
    return poly


def parse_poly_checked(ctx, text):
    text = text.strip()
    if text == "0":
        return PolyA.zero(ctx), False
    coeffs = {}
    warn = False
    for sign, coeff, exp, upoly in _parse_terms(text, _TERM_RE):
        v, reduced = _parse_base_coeff(ctx, coeff, upoly)
        warn = warn or reduced
        if sign == "-":
            v = ctx.neg(v)
        coeffs[exp] = ctx.add(coeffs.get(exp, 0), v)
    deg = max(coeffs)
    vec = [coeffs.get(i, 0) for i in range(deg + 1)]
    return PolyA(ctx, vec), warn


# -- enumeration of monic irreducibles --------------------------------------

def _coeff_block(q, n, start, stop):
    """Rows start..stop of the monic degree-n coefficient table, low-first.

    Row index i has digits of i base q with the most significant digit being
    the coefficient of T^(n-1): this realizes the canonical order.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    cols = [(idx // q ** j) % q for j in range(n)]
    return np.stack(cols, axis=1)  # (N, n), column j = coeff of T^j


def _batch_mul_mod(a, b, f, p):
    """Rowwise (a*b) mod (T^n + f) over F_p; all arrays (N, n)."""
    n = a.shape[1]
    c = np.zeros((a.shape[0], 2 * n - 1), dtype=np.int64)
    for i in range(n):
        c[:, i:i + n] += a[:, i, None] * b
    c %= p
    for j in range(2 * n - 2, n - 1, -1):
        t = c[:, j]
        c[:, j - n:j] = (c[:, j - n:j] - t[:, None] * f) % p
        c[:, j] = 0
    return c[:, :n]


def _batch_pow_mod(a, e, f, p):
    n = a.shape[1]
    r = np.zeros_like(a)
    r[:, 0] = 1
    base = a.copy()
    e = int(e)
    while e:
        if e & 1:
            r = _batch_mul_mod(r, base, f, p)
        base = _batch_mul_mod(base, base, f, p)
        e >>= 1
    return r


def _batch_compose_mod(g, h, f, p):
    """Rowwise g(h) mod (T^n + f)."""
    n = g.shape[1]
    acc = np.zeros_like(g)
    for i in range(n - 1, -1, -1):
        acc = _batch_mul_mod(acc, h, f, p)
        acc[:, 0] = (acc[:, 0] + g[:, i]) % p
    return acc


def _scalar_gcd_is_one(a, b, p):
    """gcd of int-list polynomials over F_p; True iff gcd is constant."""
    a = [int(x) for x in a]
    b = [int(x) for x in b]

    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            if not a:
                break
            fct = (a[-1] * inv) % p
            k = len(a) - len(b)
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - fct * bi) % p
            trim(a)
        a, b = b, a
    return len(a) == 1


def irreducible_mask(ctx, n, block):
    """Boolean mask over rows of `block` (low-first coeffs of monic degree-n
    polynomials): True where irreducible.  Prime q only (vectorized path)."""
    assert ctx.s == 1
    p = ctx.p
    N = block.shape[0]
    if n == 1:
        return np.ones(N, dtype=bool)
    x = np.zeros((N, n), dtype=np.int64)
    x[:, 1] = 1
    xq = _batch_pow_mod(x, p, block, p)
    # Frobenius powers X_k = x^(q^k) mod f via binary composition:
    # X_(a+b) = X_a o X_b since coefficients are Frobenius-fixed
    chain = {1: xq}

    def get_power(k):
        if k not in chain:
            if k % 2 == 0:
                h = get_power(k // 2)
                chain[k] = _batch_compose_mod(h, h, block, p)
            else:
                chain[k] = _batch_compose_mod(get_power(k - 1), xq, block, p)
        return chain[k]

    for ell in _prime_divisors(n):
        get_power(n // ell)
    mask = np.all(get_power(n) == x, axis=1)
    if not mask.any():
        return mask
    survivors = np.nonzero(mask)[0]
    for ell in _prime_divisors(n):
        d = n // ell
        diff = chain[d].copy()
        diff[:, 1] = (diff[:, 1] - 1) % p
        keep = []
        for i in survivors:
            frow = list(block[i]) + [1]
            if _scalar_gcd_is_one(frow, diff[i], p):
                keep.append(i)
        dead = set(survivors) - set(keep)
        for i in dead:
            mask[i] = False
        survivors = np.array(keep, dtype=np.int64)
        if survivors.size == 0:
            break
    return mask


def irreducible_blocks(ctx, n, chunk=1 << 17, start=0, stop=None):
    """Yield (block_coeffs, mask) over the monic degree-n candidate space in
    canonical order; block rows are low-first coefficient vectors without the
    leading 1.  Prime q only."""
    q = ctx.q
    total = q ** n
    if stop is None:
        stop = total
    pos = start
    while pos < stop:
        end = min(pos + chunk, stop)
        block = _coeff_block(q, n, pos, end)
        yield block, irreducible_mask(ctx, n, block)
        pos = end


def irreducibles(ctx, n):
    """Ordered stream of the monic irreducibles of degree n."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    q = ctx.q
    if ctx.s == 1:
        for block, mask in irreducible_blocks(ctx, n):
            for row in block[mask]:
                yield PolyA(ctx, [int(c) for c in row] + [1])
    else:
        for idx in range(q ** n):
            coeffs = [(idx // q ** (n - 1 - j)) % q for j in range(n)]
            coeffs.reverse()
            f = PolyA(ctx, coeffs + [1])
            if f.is_irreducible():
                yield f
