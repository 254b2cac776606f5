import random

import pytest

from drinfeld import (BadReductionError, PolyA, SkewPoly, additive_eval,
                      carlitz, default_rank2, ext_ctx, field_ctx, format_skew,
                      is_default_rank2, j_invariant, j_valuation_at_T,
                      parse_poly, reduce_mod)


CTX = field_ctx(5)


def rand_skew(ext, rng, maxdeg=3):
    deg = rng.randrange(maxdeg + 1)
    return SkewPoly([ext.element([rng.randrange(5) for _ in range(ext.n)])
                     for _ in range(deg + 1)])


def test_commutation_rule():
    # tau * c = c^q * tau over a residue field
    ext = ext_ctx(CTX, parse_poly(CTX, "T^3+3*T+3"))
    tau = SkewPoly([ext.zero(), ext.one()])
    rng = random.Random(20)
    for _ in range(200):
        c = ext.element([rng.randrange(5) for _ in range(3)])
        left = tau * SkewPoly([c])
        right = SkewPoly([c ** 5]) * tau
        assert left == right


def test_skew_ring_axioms_randomized():
    ext = ext_ctx(CTX, parse_poly(CTX, "T^2+2"))
    rng = random.Random(21)
    for _ in range(1000):
        a = rand_skew(ext, rng)
        b = rand_skew(ext, rng)
        c = rand_skew(ext, rng)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a + b == b + a
        assert a - a == SkewPoly(())


def test_skew_is_noncommutative():
    ext = ext_ctx(CTX, parse_poly(CTX, "T^2+2"))
    tau = SkewPoly([ext.zero(), ext.one()])
    c = SkewPoly([ext.gen()])
    assert tau * c != c * tau


def test_default_module_shape():
    phi = default_rank2(CTX)
    assert phi.rank == 2
    assert is_default_rank2(phi)
    assert format_skew(phi.phi_T()) == "T+t+4*T^4*t^2"
    C = carlitz(CTX)
    assert C.rank == 1
    assert format_skew(C.phi_T()) == "T+t"
    assert not is_default_rank2(C)


def test_homomorphism_law_generic():
    phi = default_rank2(CTX)
    rng = random.Random(22)
    for _ in range(60):
        a = PolyA(CTX, [rng.randrange(5) for _ in range(rng.randrange(1, 3))])
        b = PolyA(CTX, [rng.randrange(5) for _ in range(rng.randrange(1, 3))])
        assert phi.phi_image(a * b) == phi.phi_image(a) * phi.phi_image(b)
        assert phi.phi_image(a + b) == phi.phi_image(a) + phi.phi_image(b)


def test_homomorphism_law_reduced():
    p = parse_poly(CTX, "T^3+3*T+3")
    red = reduce_mod(default_rank2(CTX), p)
    rng = random.Random(23)
    for _ in range(1000):
        a = PolyA(CTX, [rng.randrange(5) for _ in range(rng.randrange(1, 5))])
        b = PolyA(CTX, [rng.randrange(5) for _ in range(rng.randrange(1, 5))])
        assert red.phi_image(a * b) == red.phi_image(a) * red.phi_image(b)
        assert red.phi_image(a + b) == red.phi_image(a) + red.phi_image(b)


def test_reduction_and_bad_prime():
    phi = default_rank2(CTX)
    # Delta = -T^4 dies mod T
    with pytest.raises(BadReductionError):
        reduce_mod(phi, PolyA.T(CTX))
    red = reduce_mod(phi, parse_poly(CTX, "T^2+2"))
    assert red.reduced and red.rank == 2
    # T-image constant term is T-bar
    assert red.phi_T().coeffs[0] == red.ext.gen()


def test_additive_eval_is_additive():
    p = parse_poly(CTX, "T^2+2")
    red = reduce_mod(default_rank2(CTX), p)
    ext = red.ext
    f = red.phi_T()
    rng = random.Random(24)
    for _ in range(300):
        x = ext.element([rng.randrange(5) for _ in range(2)])
        y = ext.element([rng.randrange(5) for _ in range(2)])
        assert additive_eval(f, x + y) == additive_eval(f, x) + additive_eval(f, y)


def test_j_invariant():
    phi = default_rank2(CTX)
    num, den = j_invariant(phi)
    # 1^(q+1) / (-T^4) = 4 / T^4 after making the denominator monic
    assert num == PolyA.constant(CTX, 4)
    assert den == PolyA.T(CTX) ** 4
    assert j_valuation_at_T(num, den) == -4
    red = reduce_mod(phi, parse_poly(CTX, "T^2+2"))
    jred = j_invariant(red)
    tbar = red.ext.gen()
    # j * Delta = g^(q+1) = 1 in the residue field
    assert jred * (-(tbar ** 4)) == red.ext.one()
