"""Mass scans over all monic irreducibles of a given degree: cyclicity
counts, Koblitz counts, Lang-Trotter counts for fixed traces, and the two
predicted density constants with certified truncation tails.

The hot path is fully vectorized over numpy int64 blocks: candidate
enumeration and irreducibility reuse the polyring batch engine, the action
matrices are assembled blockwise, and the characteristic polynomials come
from a batched division-free (Berkowitz) recursion.  A per-prime scalar
fallback handles the rare non-squarefree characteristic polynomials where
the invariant factors need an explicit minimal polynomial.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .field import FieldCtx
from .frobenius import InternalConsistencyError, PrimeRecord
from .polyring import (PolyA, _batch_mul_mod, _batch_pow_mod, format_poly,
                       irreducible_blocks, irreducible_mask, pi_count)
from .skew import DrinfeldModule, default_rank2


HARD_DEGREE_CAP = 12


@dataclass
class ScanConfig:
    ctx: FieldCtx
    module: DrinfeldModule = None
    n_min: int = 1
    n_max: int = 8
    lt_targets: tuple = ()
    threads: int = 1
    chunk: int = 1 << 16
    collect_records: bool = False
    compute_cyclic: bool = True
    compute_koblitz: bool = True

    def __post_init__(self):
        if self.module is None:
            self.module = default_rank2(self.ctx)
        if not (1 <= self.n_min <= self.n_max <= HARD_DEGREE_CAP):
            raise ValueError(f"degree range must sit inside 1..{HARD_DEGREE_CAP}")
        _require_default_family(self.ctx, self.module)
        for t in self.lt_targets:
            if 2 * t.degree() > self.n_max:
                # counts will simply be zero; not an error
                pass


@dataclass
class DegreeSummary:
    n: int
    pi: int
    good: int
    cyclic: int
    koblitz: int
    lt: dict
    bad: list

    def json_dict(self, q, phi_label):
        return {"q": q, "phi": phi_label, "n": self.n, "pi": self.pi,
                "cyclic": self.cyclic, "koblitz": self.koblitz,
                "lt": dict(self.lt), "bad": list(self.bad)}


@dataclass
class ScanResult:
    config: ScanConfig
    summaries: dict = field(default_factory=dict)
    records: list = field(default_factory=list)

    def cyclic(self, n):
        return self.summaries[n].cyclic

    def koblitz(self, n):
        return self.summaries[n].koblitz

    def lang_trotter(self, n, t):
        return self.summaries[n].lt.get(format_poly(t), 0)


def _require_default_family(ctx, module):
    if module.reduced or module.rank != 2:
        raise ValueError("scan wants a generic rank-2 module")
    family = -(PolyA.T(ctx) ** (ctx.q - 1))
    if module.g != PolyA.one(ctx) or module.delta != family:
        raise ValueError("scan refuses families without a closed-form unit; "
                         "use the g = 1, Delta = -T^(q-1) module")


# -- batched action matrices and charpolys ----------------------------------

def _batch_shift_mod(v, block, p):
    """Rowwise T*v mod (T^n + block)."""
    n = v.shape[1]
    out = np.zeros_like(v)
    out[:, 1:] = v[:, :-1]
    lead = v[:, n - 1]
    out = (out - lead[:, None] * block) % p
    return out


def _action_matrices(ctx, n, block):
    """(B, n, n) action matrices M = C + F + Delta(C) F^2 for the default
    family, over the primes given by the block rows."""
    p = ctx.p
    q = ctx.q
    B = block.shape[0]
    x = np.zeros((B, n), dtype=np.int64)
    if n == 1:
        # residue field is F_q itself and x^q = x, so phi_T acts as the
        # scalar c + 1 + Delta(c) = c + 1 - c^(q-1) with c = T-bar
        c = (-block[:, 0]) % p
        M = (c + 1 - pow_mod_vec(c, q - 1, p)) % p
        return M.reshape(B, 1, 1)
    x[:, 1] = 1
    xq = _batch_pow_mod(x, q, block, p)
    # Frobenius matrix: columns are (T^q)^j mod p
    F = np.zeros((B, n, n), dtype=np.int64)
    col = np.zeros((B, n), dtype=np.int64)
    col[:, 0] = 1
    for j in range(n):
        F[:, :, j] = col
        if j < n - 1:
            col = _batch_mul_mod(col, xq, block, p)
    # companion matrix C: columns T^(j+1) mod p
    C = np.zeros((B, n, n), dtype=np.int64)
    for j in range(n - 1):
        C[:, j + 1, j] = 1
    C[:, :, n - 1] = (-block) % p
    # multiplication matrix of Delta = -T^(q-1): columns -T^(q-1+j) mod p
    tq1 = _batch_pow_mod(x, q - 1, block, p)
    D = np.zeros((B, n, n), dtype=np.int64)
    col = (-tq1) % p
    for j in range(n):
        D[:, :, j] = col
        if j < n - 1:
            col = _batch_shift_mod(col, block, p)
    F2 = np.matmul(F, F) % p
    M = (C + F + np.matmul(D, F2)) % p
    return M


def pow_mod_vec(a, e, p):
    r = np.ones_like(a)
    a = a % p
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def _batch_charpoly(M, p):
    """Division-free characteristic polynomials of a (B, n, n) stack,
    returned low-first as a (B, n+1) array (monic)."""
    B, n = M.shape[0], M.shape[1]
    C = np.zeros((B, 2), dtype=np.int64)
    C[:, 0] = 1
    C[:, 1] = (-M[:, 0, 0]) % p
    for r in range(2, n + 1):
        a = M[:, r - 1, r - 1]
        R = M[:, r - 1, :r - 1]
        S = M[:, :r - 1, r - 1]
        qv = np.zeros((B, r + 1), dtype=np.int64)
        qv[:, 0] = 1
        qv[:, 1] = (-a) % p
        v = S
        for k in range(r - 1):
            qv[:, k + 2] = (-np.einsum("bi,bi->b", R, v)) % p
            if k < r - 2:
                v = np.einsum("bij,bj->bi", M[:, :r - 1, :r - 1], v) % p
        # C_new = conv(qv, C) truncated to length r+1
        Cn = np.zeros((B, r + 1), dtype=np.int64)
        for i in range(r):
            top = min(r + 1 - i, r + 1)
            Cn[:, i:i + top] += qv[:, :top] * C[:, i, None]
        C = Cn % p
    return C[:, ::-1].copy()  # low-first


def _scalar_squarefree(row, p):
    """Squarefreeness of a monic polynomial given low-first (gcd with the
    derivative is constant)."""
    f = [int(c) for c in row]
    deriv = [(i * f[i]) % p for i in range(1, len(f))]
    from .polyring import _scalar_gcd_is_one
    return _scalar_gcd_is_one(f, deriv, p)


def _scalar_invariants(ctx, mat, ncoeffs):
    """(d, e) for one action matrix via the minimal polynomial."""
    from .frobenius import _minpoly_vector
    n = mat.shape[0]
    m = PolyA.one(ctx)
    N = PolyA(ctx, [int(c) for c in ncoeffs])
    for j in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[j] = 1
        mv = _minpoly_vector(ctx, mat, v, None)
        g = m.gcd(mv)
        m = (m * mv) // g
        if m.degree() == n:
            break
    d, r = divmod(N, m)
    if not r.is_zero():
        raise InternalConsistencyError("minpoly does not divide charpoly")
    e, r = divmod(m, d)
    if not r.is_zero():
        raise InternalConsistencyError("more than two invariant factors")
    return d.monic(), e.monic()


def _scan_range(ctx, n, targets, start, stop, chunk, collect,
                do_cyclic=True, do_koblitz=True):
    """Process the candidate index range [start, stop); returns partial
    counts and optionally CSV-ready records in canonical order."""
    p = ctx.p
    half = n // 2
    counts = {"good": 0, "cyclic": 0, "koblitz": 0}
    lt = {format_poly(t): 0 for t in targets}
    tvecs = {}
    for t in targets:
        vec = np.zeros(half + 1, dtype=np.int64)
        for i, c in enumerate(t.coeffs):
            if i < len(vec):
                vec[i] = c
        # targets past the trace degree bound can never match
        tvecs[format_poly(t)] = (vec, t.degree() <= half)
    records = []
    bad = []
    for block, mask in irreducible_blocks(ctx, n, chunk=chunk, start=start,
                                          stop=stop):
        primes = block[mask]
        if n == 1:
            good_mask = primes[:, 0] != 0
            for row in primes[~good_mask]:
                bad.append("T")
            primes = primes[good_mask]
        B = primes.shape[0]
        if B == 0:
            continue
        M = _action_matrices(ctx, n, primes)
        N = _batch_charpoly(M, p)
        # trace: a = 1 + p - N, leading terms cancel
        pfull = np.concatenate([primes, np.ones((B, 1), dtype=np.int64)], axis=1)
        a = (pfull - N) % p
        a[:, 0] = (a[:, 0] + 1) % p
        if np.any(a[:, half + 1:]):
            raise InternalConsistencyError("trace degree bound violated in scan")
        counts["good"] += B
        if do_koblitz or collect:
            kob = irreducible_mask(ctx, n, N[:, :n]) if n > 1 else np.ones(B, dtype=bool)
            counts["koblitz"] += int(np.count_nonzero(kob))
        for label, (vec, ok) in tvecs.items():
            if not ok:
                continue
            lt[label] += int(np.count_nonzero(np.all(a[:, :len(vec)] == vec, axis=1)))
        invs = {}
        if do_cyclic or collect:
            # cyclicity: squarefree charpoly is the fast path
            need_minpoly = []
            ncyc = 0
            for i in range(B):
                if _scalar_squarefree(N[i], p):
                    ncyc += 1
                else:
                    need_minpoly.append(i)
            for i in need_minpoly:
                d, e = _scalar_invariants(ctx, M[i], N[i])
                invs[i] = (d, e)
                if d.degree() == 0:
                    ncyc += 1
            counts["cyclic"] += ncyc
        if collect:
            one = PolyA.one(ctx)
            for i in range(B):
                pr = PolyA(ctx, [int(c) for c in primes[i]] + [1])
                Np = PolyA(ctx, [int(c) for c in N[i]])
                ap = PolyA(ctx, [int(c) for c in a[i]])
                if i in invs:
                    d, e = invs[i]
                else:
                    d, e = one, Np
                records.append(PrimeRecord(
                    prime=pr, degree=n, a_p=ap, eps=1, charpoly=Np, d=d, e=e,
                    cyclic=(d.degree() == 0), koblitz=bool(kob[i])))
    return counts, lt, records, bad


def scan(cfg):
    """Run the configured scan; deterministic output independent of the
    thread count."""
    ctx = cfg.ctx
    result = ScanResult(config=cfg)
    for n in range(cfg.n_min, cfg.n_max + 1):
        total = ctx.q ** n
        workers = max(1, min(cfg.threads, 8))
        flags = (cfg.compute_cyclic, cfg.compute_koblitz)
        if workers == 1 or total <= cfg.chunk:
            parts = [_scan_range(ctx, n, cfg.lt_targets, 0, total, cfg.chunk,
                                 cfg.collect_records, *flags)]
        else:
            # contiguous ranges by leading-coefficient prefix
            bounds = [total * w // workers for w in range(workers + 1)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futs = [pool.submit(_scan_range, ctx, n, cfg.lt_targets,
                                    bounds[w], bounds[w + 1], cfg.chunk,
                                    cfg.collect_records, *flags)
                        for w in range(workers)]
                parts = [f.result() for f in futs]
        counts = {"good": 0, "cyclic": 0, "koblitz": 0}
        lt = {format_poly(t): 0 for t in cfg.lt_targets}
        bad = []
        for c, l, recs, b in parts:
            for k in counts:
                counts[k] += c[k]
            for k in lt:
                lt[k] += l[k]
            bad.extend(b)
            result.records.extend(recs)
        result.summaries[n] = DegreeSummary(
            n=n, pi=pi_count(ctx.q, n), good=counts["good"],
            cyclic=counts["cyclic"], koblitz=counts["koblitz"], lt=lt, bad=bad)
    return result


def tabulate_cyclic(ctx, n, threads=1):
    cfg = ScanConfig(ctx, n_min=n, n_max=n, threads=threads)
    return scan(cfg).cyclic(n)


def tabulate_koblitz(ctx, n, threads=1):
    cfg = ScanConfig(ctx, n_min=n, n_max=n, threads=threads)
    return scan(cfg).koblitz(n)


def tabulate_lang_trotter(ctx, n, t, threads=1):
    cfg = ScanConfig(ctx, n_min=n, n_max=n, lt_targets=(t,), threads=threads,
                     compute_cyclic=False, compute_koblitz=False)
    return scan(cfg).lang_trotter(n, t)


def write_csv(result, path):
    with open(path, "w") as fh:
        fh.write(PrimeRecord.csv_header() + "\n")
        for rec in result.records:
            fh.write(rec.csv_row() + "\n")


def write_summary(result, path):
    ctx = result.config.ctx
    label = result.config.module.label or "?"
    dicts = [s.json_dict(ctx.q, label) for _, s in sorted(result.summaries.items())]
    payload = dicts[0] if len(dicts) == 1 else dicts
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


# -- density constants ------------------------------------------------------

FRAC_BITS = 192


def _fixed(fr):
    return (fr.numerator << FRAC_BITS) // fr.denominator


def _fixed_mul(a, b):
    return (a * b) >> FRAC_BITS


def _fixed_pow(a, e):
    r = 1 << FRAC_BITS
    while e:
        if e & 1:
            r = _fixed_mul(r, a)
        a = _fixed_mul(a, a)
        e >>= 1
    return r


def _fixed_decimal(a, digits=30):
    ipart = a >> FRAC_BITS
    frac = a - (ipart << FRAC_BITS)
    out = [str(ipart), "."]
    for _ in range(digits):
        frac *= 10
        out.append(str(frac >> FRAC_BITS))
        frac -= (frac >> FRAC_BITS) << FRAC_BITS
    return "".join(out)


@dataclass
class ConstantApprox:
    name: str
    q: int
    D: int
    value: str
    tail_bound: Fraction

    def json_dict(self):
        return {"constant": self.name, "q": self.q, "D": self.D,
                "value": self.value, "tail_bound": f"{float(self.tail_bound):.3e}"}

    def interval(self):
        """Enclosure [value*(1 - tail), value] as decimal strings."""
        v = Fraction(int(self.value.replace(".", "")), 10 ** (len(self.value) - 2))
        lo = v * (1 - self.tail_bound)
        return lo, v


def _euler_product(q, D, u_of_d):
    acc = 1 << FRAC_BITS
    for d in range(1, D + 1):
        factor = _fixed(1 - u_of_d(d))
        acc = _fixed_mul(acc, _fixed_pow(factor, pi_count(q, d)))
    return acc


def _tail_bound(q, D, k):
    """Certified bound on |log| of the omitted factors past degree D.

    Uses pi_A(d) <= q^d/d, |log(1-u)| <= 2u for u <= 1/2, and
    u_d <= 2 q^(-k d) (the factor denominators satisfy
    (1 - q^(-d))^3 (1 + q^(-d)) >= 1/2 for q^d >= 5), so the tail is at
    most (4/(D+1)) * sum_{d>D} q^((1-k)d), summed geometrically."""
    r = Fraction(1, q ** (k - 1))
    return Fraction(4, D + 1) * r ** (D + 1) / (1 - r)


def const_cyclic(q, D=20):
    """Partial Euler product for the cyclicity density
    prod_d (1 - 1/(q^d (q^d-1)^2 (q^d+1)))^pi(d)."""
    def u(d):
        Q = q ** d
        return Fraction(1, Q * (Q - 1) ** 2 * (Q + 1))
    val = _euler_product(q, D, u) if D >= 1 else (1 << FRAC_BITS)
    return ConstantApprox("c_phi", q, D, _fixed_decimal(val),
                          _tail_bound(q, D, 4))


def const_koblitz(q, D=20):
    """Partial Euler product for the Koblitz density
    prod_d (1 - (q^(2d)-q^d-1)/((q^d-1)^3 (q^d+1)))^pi(d)."""
    def u(d):
        Q = q ** d
        return Fraction(Q * Q - Q - 1, (Q - 1) ** 3 * (Q + 1))
    val = _euler_product(q, D, u) if D >= 1 else (1 << FRAC_BITS)
    return ConstantApprox("C_phi", q, D, _fixed_decimal(val),
                          _tail_bound(q, D, 2))


def lt_ratio_report(q, n, t, count):
    """Raw Lang-Trotter ratio P_t(n) * n / q^(n/2); no convergence claim."""
    ratio = count * n / (q ** (n / 2))
    return {"n": n, "t": format_poly(t) if isinstance(t, PolyA) else str(t),
            "count": count, "ratio": ratio}
