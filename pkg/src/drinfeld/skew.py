"""The skew polynomial ring K{tau} with tau*c = c^q*tau, rank-1/2 module
data, additive-polynomial evaluation, and the j-invariant.

Coefficients live either in A = F_q[T] (generic fiber, PolyA entries) or in
a residue field F_q[T]/(p) (ExtFieldElem entries) after reduction.
"""

from __future__ import annotations

from .field import ExtFieldCtx, ExtFieldElem, FieldError, ext_ctx, frob
from .polyring import PolyA, format_poly


class BadReductionError(ValueError):
    """Reduction mod p kills the leading coefficient."""


def _twist(c, k=1):
    """c^(q^k): the coefficient twist used by the commutation rule."""
    if isinstance(c, ExtFieldElem):
        return frob(c, k)
    # PolyA over F_q: coefficients are Frobenius-fixed, so
    # c(T)^(q^k) = c(T^(q^k)) -- a sparse substitution
    if k == 0 or c.degree() <= 0:
        return c
    step = c.ctx.q ** k
    out = [0] * (c.degree() * step + 1)
    for j, cj in enumerate(c.coeffs):
        out[j * step] = cj
    return PolyA(c.ctx, out)


class SkewPoly:
    """Sum a_i tau^i with coefficients in a common ring (PolyA or ext field)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else None
            b = other.coeffs[i] if i < len(other.coeffs) else None
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return SkewPoly(out)

    def __neg__(self):
        return SkewPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Twisted product: (a tau^i)(b tau^j) = a * b^(q^i) tau^(i+j)."""
        if self.is_zero() or other.is_zero():
            return SkewPoly(())
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if _is_zero(b):
                    continue
                term = a * _twist(b, i)
                k = i + j
                out[k] = term if out[k] is None else out[k] + term
        zero = _zero_like(self.coeffs[0])
        return SkewPoly([zero if c is None else c for c in out])

    def __str__(self):
        return format_skew(self)

    def __repr__(self):
        return f"SkewPoly({format_skew(self)!r})"


def _is_zero(c):
    if isinstance(c, ExtFieldElem):
        return c.is_zero()
    return c.is_zero()


def _zero_like(c):
    if isinstance(c, ExtFieldElem):
        return c.ext.zero()
    return PolyA.zero(c.ctx)


def format_skew(f):
    """Text form with `t` for tau, e.g. `T+t+4*T^4*t^2`."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree() + 1):
        c = f.coeffs[i]
        if _is_zero(c):
            continue
        if isinstance(c, ExtFieldElem):
            base = c.in_base()
            cs = str(base) if base is not None else "(" + ",".join(str(int(v)) for v in c.vec) + ")"
            is_one = base == 1
        else:
            cs = format_poly(c)
            if c.degree() > 0 and sum(1 for x in c.coeffs if x) > 1:
                cs = f"({cs})"
            is_one = c.coeffs == (1,)
        if i == 0:
            parts.append(cs)
        else:
            tk = "t" if i == 1 else f"t^{i}"
            parts.append(tk if is_one else f"{cs}*{tk}")
    return "+".join(parts)


class DrinfeldModule:
    """Rank-1 or rank-2 module data (g, Delta) with T-image
    T + g*tau (+ Delta*tau^2).

    Generic modules carry PolyA coefficients over A; reduced modules carry
    ExtFieldElem coefficients over a residue field, with T-image constant
    term T-bar.
    """

    def __init__(self, ctx, g, delta=None, ext=None, label=None):
        self.ctx = ctx
        self.ext = ext  # ExtFieldCtx when reduced, else None
        self.g = g
        self.delta = delta
        self.rank = 1 if delta is None else 2
        self.label = label
        self._phi_t_powers = None
        if self.rank == 2 and _is_zero(delta):
            raise ValueError("rank-2 module needs nonzero tau^2 coefficient")
        if self.rank == 1 and _is_zero(g):
            raise ValueError("rank-1 module needs nonzero tau coefficient")

    @property
    def reduced(self):
        return self.ext is not None

    def phi_T(self):
        if self.reduced:
            const = self.ext.gen()
        else:
            const = PolyA.T(self.ctx)
        coeffs = [const, self.g]
        if self.rank == 2:
            coeffs.append(self.delta)
        return SkewPoly(coeffs)

    def _t_power(self, i):
        if self._phi_t_powers is None:
            one = self.ext.one() if self.reduced else PolyA.one(self.ctx)
            self._phi_t_powers = [SkewPoly([one]), self.phi_T()]
        while len(self._phi_t_powers) <= i:
            self._phi_t_powers.append(self._phi_t_powers[-1] * self._phi_t_powers[1])
        return self._phi_t_powers[i]

    def phi_image(self, a):
        """Image of a in A under the F_q-algebra map with T -> phi_T."""
        if a.ctx != self.ctx:
            raise FieldError("polynomial from a different base field")
        if self.reduced:
            scal = self.ext.scalar
        else:
            def scal(c):
                return PolyA.constant(self.ctx, c)
        acc = SkewPoly(())
        for i, c in enumerate(a.coeffs):
            if c == 0:
                continue
            acc = acc + SkewPoly([scal(c)]) * self._t_power(i)
        return acc

    def __repr__(self):
        kind = "reduced" if self.reduced else "generic"
        return f"DrinfeldModule(rank={self.rank}, {kind})"


def default_rank2(ctx):
    """The rank-2 module with T -> T + tau - T^(q-1) tau^2."""
    g = PolyA.one(ctx)
    delta = -(PolyA.T(ctx) ** (ctx.q - 1))
    return DrinfeldModule(ctx, g, delta, label="T+t-T^{}*t^2".format(ctx.q - 1))


def is_default_rank2(module):
    """True for the generic g = 1, Delta = -T^(q-1) module."""
    if module.reduced or module.rank != 2:
        return False
    ctx = module.ctx
    return (module.g == PolyA.one(ctx)
            and module.delta == -(PolyA.T(ctx) ** (ctx.q - 1)))


def carlitz(ctx):
    """The rank-1 module with T -> T + tau."""
    return DrinfeldModule(ctx, PolyA.one(ctx), label="T+t")


def reduce_mod(module, p):
    """Coefficientwise reduction of a generic module mod the monic
    irreducible p; raises BadReductionError if the top coefficient dies."""
    if module.reduced:
        raise ValueError("module is already reduced")
    ext = ext_ctx(module.ctx, p)
    tbar = ext.gen()
    g = module.g.evaluate(tbar)
    if module.rank == 1:
        if g.is_zero():
            raise BadReductionError(f"bad reduction at {p}")
        return DrinfeldModule(module.ctx, g, ext=ext, label=module.label)
    delta = module.delta.evaluate(tbar)
    if delta.is_zero():
        raise BadReductionError(f"bad reduction at {p}")
    return DrinfeldModule(module.ctx, g, delta, ext=ext, label=module.label)


def additive_eval(f, x, lift=None):
    """Evaluate the additive polynomial sum a_i x^(q^i).

    x is an ExtFieldElem or a tower element; `lift` maps each coefficient of
    f into x's field (identity by default)."""
    if lift is None:
        lift = lambda c: c
    acc = None
    for i, c in enumerate(f.coeffs):
        term = lift(c) * _frob_any(x, i)
        acc = term if acc is None else acc + term
    if acc is None:
        return _frob_any(x, 0) - _frob_any(x, 0)  # zero of x's field
    return acc


def _frob_any(x, k):
    if isinstance(x, ExtFieldElem):
        return frob(x, k)
    return x.frob(k)


def j_invariant(module):
    """g^(q+1)/Delta for a rank-2 module.

    Generic input: returns a reduced fraction (num, den) of PolyA with den
    monic.  Reduced input: returns a field element.
    """
    if module.rank != 2:
        raise ValueError("j-invariant needs a rank-2 module")
    q = module.ctx.q
    if module.reduced:
        return (module.g ** (q + 1)) * module.delta.inverse()
    num = module.g ** (q + 1)
    den = module.delta
    if num.is_zero():
        return PolyA.zero(module.ctx), PolyA.one(module.ctx)
    g = num.gcd(den)
    num, den = num // g, den // g
    ctx = module.ctx
    lead_inv = ctx.inv(den.leading())
    return num * lead_inv, den * lead_inv


def j_valuation_at_T(num, den):
    """T-adic valuation of a fraction num/den of polynomials."""
    def ord_T(f):
        if f.is_zero():
            raise ValueError("valuation of zero")
        k = 0
        while f.coeffs[k] == 0:
            k += 1
        return k
    return ord_T(num) - ord_T(den)
