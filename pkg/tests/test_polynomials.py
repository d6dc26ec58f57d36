from __future__ import annotations

import random
from fractions import Fraction

import pytest

from resym import PolyQ, UnsupportedFactorization, factor_monic, is_irreducible
from resym.polynomials import rational_roots, sqrt_fraction


def test_divmod_roundtrip():
    rng = random.Random(5)
    for _ in range(40):
        a = PolyQ([Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 6))])
        b = PolyQ([Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 4))])
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


def test_gcd_of_known_product():
    p = PolyQ((-1, 0, 1))          # t^2 - 1
    q = PolyQ((-1, 1)) * PolyQ((2, 1))
    g = p.gcd(q)
    assert g == PolyQ((-1, 1))     # t - 1


def test_rational_roots():
    # (t - 1/2)(t + 3) t
    p = PolyQ((Fraction(-1, 2), 1)) * PolyQ((3, 1)) * PolyQ((0, 1))
    roots = dict(rational_roots(p))
    assert roots == {Fraction(1, 2): 1, Fraction(-3): 1, Fraction(0): 1}


def test_sqrt_fraction():
    assert sqrt_fraction(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_fraction(Fraction(2)) is None
    assert sqrt_fraction(Fraction(-1)) is None


def test_irreducibility_small_cases():
    assert is_irreducible(PolyQ((1, 0, 1)))          # t^2+1
    assert is_irreducible(PolyQ((-2, 0, 1)))         # t^2-2
    assert not is_irreducible(PolyQ((-1, 0, 1)))     # t^2-1
    assert is_irreducible(PolyQ((-2, -1, 0, 1)))     # t^3-t-2
    assert is_irreducible(PolyQ((1, 0, 0, 0, 1)))    # t^4+1
    assert not is_irreducible(PolyQ((4, 0, 0, 0, 1)))  # t^4+4 = (t^2-2t+2)(t^2+2t+2)


def test_quartic_split_biquadratic():
    # (t^2+1)(t^2+2) has no rational roots but splits into quadratics
    p = PolyQ((1, 0, 1)) * PolyQ((2, 0, 1))
    factors = dict(factor_monic(p))
    assert factors == {PolyQ((1, 0, 1)): 1, PolyQ((2, 0, 1)): 1}


def test_quartic_split_with_odd_part():
    p = PolyQ((2, 2, 1)) * PolyQ((3, -1, 1))
    assert dict(factor_monic(p)) == {PolyQ((2, 2, 1)): 1, PolyQ((3, -1, 1)): 1}


def test_factor_with_multiplicity():
    p = PolyQ((1, 0, 1)) ** 2
    assert dict(factor_monic(p)) == {PolyQ((1, 0, 1)): 2}


def test_factor_mixed():
    p = PolyQ((-1, 1)) * PolyQ((1, 0, 1)) * PolyQ((2, 1))
    assert dict(factor_monic(p)) == {
        PolyQ((-1, 1)): 1, PolyQ((2, 1)): 1, PolyQ((1, 0, 1)): 1}


def test_factor_random_products_roundtrip():
    rng = random.Random(17)
    pool = [PolyQ((1, 0, 1)), PolyQ((2, 0, 1)), PolyQ((1, 1, 1)),
            PolyQ((Fraction(-1, 2), 1)), PolyQ((3, 1)), PolyQ((0, 1))]
    for _ in range(40):
        chosen = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        prod = PolyQ.one()
        for c in chosen:
            prod = prod * c
        if prod.degree > 4:
            continue
        rebuilt = PolyQ.one()
        for f, m in factor_monic(prod):
            assert is_irreducible(f)
            rebuilt = rebuilt * f ** m
        assert rebuilt == prod


def test_unsupported_degree_raises():
    # irreducible quintic t^5 - t - 1
    p = PolyQ((-1, -1, 0, 0, 0, 1))
    with pytest.raises(UnsupportedFactorization):
        factor_monic(p)


def test_shifted_coefficients():
    from resym.polynomials import shifted_coefficients
    p = PolyQ((1, 2, 1))  # (t+1)^2
    shifted = shifted_coefficients(p, Fraction(-1), Fraction(1))
    assert PolyQ(shifted) == PolyQ((0, 0, 1))
