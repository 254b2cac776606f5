"""Finite matrix-group computations over small fields F_Q and the dual
numbers F_p[u]/(u^2): the |GL_2| order formula, the exhaustive count behind
the Koblitz local factor, unipotent generation of SL_2, and the commutator
closure of GL_2.  Everything here is exhaustive over rings of size <= 25.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import FieldError, _fp_mul, _fp_mod, _smallest_irreducible_fp, is_prime


MAX_RING_SIZE = 25


class SmallRing:
    """Tables for a finite commutative ring: a field F_Q (any prime power
    Q <= 25) or the dual numbers F_p[u]/(u^2)."""

    def __init__(self, name, size, add, mul, inv):
        self.name = name
        self.size = size
        self.add = add  # (size, size) int arrays
        self.mul = mul
        self.inv = inv  # inv[x] = -1 when x is not a unit
        self.neg = np.array([int(add[x].tolist().index(0)) for x in range(size)],
                            dtype=np.int64)

    def is_unit(self, x):
        return self.inv[x] >= 0


def _field_tables(Q):
    """Field of order Q by tables; elements 0..Q-1 with base-p digit
    encoding for prime powers."""
    if Q > MAX_RING_SIZE:
        raise FieldError(f"ring of size {Q} exceeds the enumeration budget")
    p, s = _prime_power(Q)
    if s == 1:
        idx = np.arange(Q, dtype=np.int64)
        add = (idx[:, None] + idx[None, :]) % Q
        mul = (idx[:, None] * idx[None, :]) % Q
        inv = np.full(Q, -1, dtype=np.int64)
        for x in range(1, Q):
            inv[x] = pow(x, Q - 2, Q)
        return SmallRing(f"F_{Q}", Q, add, mul, inv)
    defining = list(_smallest_irreducible_fp(p, s))

    def decode(a):
        return [(a // p ** i) % p for i in range(s)]

    def encode(v):
        return sum((int(v[i]) if i < len(v) else 0) % p * p ** i for i in range(s))

    add = np.zeros((Q, Q), dtype=np.int64)
    mul = np.zeros((Q, Q), dtype=np.int64)
    for a in range(Q):
        da = decode(a)
        for b in range(Q):
            db = decode(b)
            add[a, b] = encode([(x + y) % p for x, y in zip(da, db)])
            prod = _fp_mod(_fp_mul([x for x in da], [y for y in db], p), defining, p)
            mul[a, b] = encode(prod)
    inv = np.full(Q, -1, dtype=np.int64)
    for x in range(1, Q):
        # x^(Q-2) by the table
        acc, base, e = 1, x, Q - 2
        while e:
            if e & 1:
                acc = int(mul[acc, base])
            base = int(mul[base, base])
            e >>= 1
        inv[x] = acc
    return SmallRing(f"F_{Q}", Q, add, mul, inv)


def _dual_number_tables(p):
    """F_p[u]/(u^2), encoded a + p*b for a + b*u; size p^2."""
    if p * p > MAX_RING_SIZE:
        raise FieldError("dual-number ring exceeds the enumeration budget")
    Q = p * p
    idx = np.arange(Q, dtype=np.int64)
    a, b = idx % p, idx // p
    add = ((a[:, None] + a[None, :]) % p) + p * ((b[:, None] + b[None, :]) % p)
    mul = ((a[:, None] * a[None, :]) % p) + \
        p * ((a[:, None] * b[None, :] + b[:, None] * a[None, :]) % p)
    inv = np.full(Q, -1, dtype=np.int64)
    for x in range(Q):
        xa, xb = x % p, x // p
        if xa == 0:
            continue
        ia = pow(xa, p - 2, p)
        ib = (-xb * ia * ia) % p
        inv[x] = ia + p * ib
    return SmallRing(f"F_{p}[u]/(u^2)", Q, add, mul, inv)


def _prime_power(Q):
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        if Q % p == 0:
            s = 0
            n = Q
            while n % p == 0:
                n //= p
                s += 1
            if n != 1:
                raise FieldError(f"{Q} is not a prime power")
            return p, s
    if is_prime(Q):
        return Q, 1
    raise FieldError(f"{Q} is not a prime power")


def small_field(Q):
    return _field_tables(Q)


def dual_numbers(p):
    return _dual_number_tables(p)


def gl2_order(Q):
    """|GL_2(F_Q)| = Q(Q-1)^2(Q+1)."""
    if Q < 2:
        raise ValueError("Q must be at least 2")
    return Q * (Q - 1) ** 2 * (Q + 1)


def sl2_order(Q):
    return Q * (Q * Q - 1)


def _all_matrices(ring):
    """Entry arrays (a, b, c, d) for every 2x2 matrix over the ring."""
    n = ring.size
    idx = np.arange(n ** 4, dtype=np.int64)
    a = idx % n
    b = (idx // n) % n
    c = (idx // n ** 2) % n
    d = idx // n ** 3
    return a, b, c, d


def _det(ring, a, b, c, d):
    ad = ring.mul[a, d]
    bc = ring.mul[b, c]
    return ring.add[ad, ring.neg[bc]]


def gl2_count(ring):
    """Exhaustive count of invertible 2x2 matrices."""
    a, b, c, d = _all_matrices(ring)
    det = _det(ring, a, b, c, d)
    return int(np.count_nonzero(ring.inv[det] >= 0))


def koblitz_local_count(Q):
    """Exhaustive count of g in GL_2(F_Q) with det(I - g) a unit.

    Returns (count, ratio, normalized) where ratio = count/|GL_2| and
    normalized = ratio / (1 - 1/Q); the normalized value must equal the
    closed form 1 - (Q^2 - Q - 1)/((Q-1)^3 (Q+1))."""
    ring = small_field(Q)
    a, b, c, d = _all_matrices(ring)
    det = _det(ring, a, b, c, d)
    invertible = ring.inv[det] >= 0
    one = 1  # the unit element encodes as the int 1 in every ring here
    ia = ring.add[one, ring.neg[a]]
    ib = ring.neg[b]
    ic = ring.neg[c]
    idd = ring.add[one, ring.neg[d]]
    det2 = _det(ring, ia, ib, ic, idd)
    good = invertible & (ring.inv[det2] >= 0)
    count = int(np.count_nonzero(good))
    total = gl2_order(Q)
    ratio = Fraction(count, total)
    normalized = ratio / (1 - Fraction(1, Q))
    closed = 1 - Fraction(Q * Q - Q - 1, (Q - 1) ** 3 * (Q + 1))
    if normalized != closed:
        raise AssertionError(
            f"local count {count}/{total} disagrees with the closed form")
    return count, ratio, normalized


def _mat_mul(ring, x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    m, s = ring.mul, ring.add
    return (int(s[m[a1, a2], m[b1, c2]]), int(s[m[a1, b2], m[b1, d2]]),
            int(s[m[c1, a2], m[d1, c2]]), int(s[m[c1, b2], m[d1, d2]]))


def _mat_inv(ring, x):
    a, b, c, d = x
    det = int(ring.add[ring.mul[a, d], ring.neg[ring.mul[b, c]]])
    di = int(ring.inv[det])
    if di < 0:
        raise FieldError("matrix is not invertible")
    m, neg = ring.mul, ring.neg
    return (int(m[d, di]), int(m[neg[b], di]), int(m[neg[c], di]), int(m[a, di]))


def _closure(ring, generators):
    """Subgroup generated by the given matrices (breadth-first products)."""
    gens = []
    for g in generators:
        gens.append(g)
        gens.append(_mat_inv(ring, g))
    seen = {(1, 0, 0, 1)}
    frontier = [(1, 0, 0, 1)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mat_mul(ring, x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def sl2_set(ring):
    a, b, c, d = _all_matrices(ring)
    det = _det(ring, a, b, c, d)
    mask = det == 1
    return set(zip(a[mask].tolist(), b[mask].tolist(),
                   c[mask].tolist(), d[mask].tolist()))


def sl2_unipotent_generation(Q):
    """Closure of the upper and lower unipotent subgroups equals SL_2(F_Q)."""
    if Q > 9:
        raise ValueError("exhaustive closure capped at Q = 9")
    ring = small_field(Q)
    gens = []
    for x in range(1, Q):
        gens.append((1, x, 0, 1))
        gens.append((1, 0, x, 1))
    closure = _closure(ring, gens)
    target = sl2_set(ring)
    return closure == target


def _unit_group_generators(ring):
    """Small set of units whose powers and products give every unit."""
    gens = []
    reached = {1}
    for x in range(2, ring.size):
        if not ring.is_unit(x) or x in reached:
            continue
        gens.append(x)
        # absorb the subgroup generated so far
        frontier = [1]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = int(ring.mul[a, g])
                    if b not in reached:
                        reached.add(b)
                        nxt.append(b)
            frontier = nxt
    return gens


def _nilpotent_representatives(ring):
    """Additive generators of the ring: 1 plus one representative per
    principal nonunit line (just u for the dual numbers, nothing for
    fields)."""
    reps = [1]
    if ring.name.endswith("(u^2)"):
        p = int(round(ring.size ** 0.5))
        reps.append(p)  # the element u
    return reps


def _gl2_generators(ring):
    gens = []
    for x in _nilpotent_representatives(ring):
        gens.append((1, x, 0, 1))
        gens.append((1, 0, x, 1))
    for x in _unit_group_generators(ring):
        gens.append((x, 0, 0, 1))
    return gens


def commutator_closure(ring):
    """Normal closure of the commutators of GL_2(ring) generators: the
    commutator subgroup, since commutators of generators normally generate
    it."""
    gens = _gl2_generators(ring)
    comms = []
    for g in gens:
        gi = _mat_inv(ring, g)
        for h in gens:
            hi = _mat_inv(ring, h)
            comms.append(_mat_mul(ring, _mat_mul(ring, g, h),
                                  _mat_mul(ring, gi, hi)))
    group = _closure(ring, comms)
    # close under conjugation by the ambient generators until stable
    while True:
        new = []
        for g in gens:
            gi = _mat_inv(ring, g)
            for x in group:
                y = _mat_mul(ring, _mat_mul(ring, g, x), gi)
                if y not in group:
                    new.append(y)
        if not new:
            break
        group = _closure(ring, list(group) + new)
    return group


def commutator_check(ring):
    """Commutator subgroup of GL_2(ring) equals SL_2(ring) = {det = 1}."""
    group = commutator_closure(ring)
    for x in group:
        det = int(ring.add[ring.mul[x[0], x[3]], ring.neg[ring.mul[x[1], x[2]]]])
        if det != 1:
            return False
    return group == sl2_set(ring)


def check_group_report(q=5):
    """All finite-group verifications as a JSON-ready dict."""
    report = {"q": q, "checks": []}

    for Q in (3, q, 9, q * q):
        ring = small_field(Q)
        count = gl2_count(ring)
        ok = count == gl2_order(Q)
        report["checks"].append({
            "name": "gl2_order", "Q": Q, "formula": gl2_order(Q),
            "enumerated": count, "ok": ok})

    for Q in (q, 3):
        count, ratio, normalized = koblitz_local_count(Q)
        report["checks"].append({
            "name": "koblitz_local_count", "Q": Q, "count": count,
            "of": gl2_order(Q), "normalized": str(normalized), "ok": True})

    for Q in (q, 9):
        ok = sl2_unipotent_generation(Q)
        report["checks"].append({
            "name": "sl2_unipotent_generation", "Q": Q,
            "sl2_order": sl2_order(Q), "ok": ok})

    for ring, expected in ((small_field(q), sl2_order(q)),
                           (dual_numbers(q), sl2_order(q) * q ** 3)):
        group = commutator_closure(ring)
        ok = len(group) == expected and group == sl2_set(ring)
        report["checks"].append({
            "name": "commutator_check", "ring": ring.name,
            "closure_size": len(group), "expected": expected, "ok": ok})

    report["ok"] = all(c["ok"] for c in report["checks"])
    return report
