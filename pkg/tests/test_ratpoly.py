import math
import random
from fractions import Fraction

import pytest

from algentropy.ratpoly import (
    IntPoly,
    RatPoly,
    cyclotomic,
    parse_rational,
    pnorm,
    poly_gcd,
    primitivize,
    squarefree_decomposition,
    vp,
)


def test_vp_examples():
    assert vp(Fraction(3, 2), 2) == -1
    assert vp(50, 5) == 2
    assert vp(0, 7) == math.inf


def test_vp_rejects_composite():
    with pytest.raises(ValueError):
        vp(Fraction(1, 2), 4)


def test_vp_multiplicative_and_ultrametric():
    rng = random.Random(11)
    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(300):
        p = rng.choice(primes)
        x = Fraction(rng.randint(1, 400) * rng.choice([-1, 1]), rng.randint(1, 400))
        y = Fraction(rng.randint(1, 400) * rng.choice([-1, 1]), rng.randint(1, 400))
        assert vp(x * y, p) == vp(x, p) + vp(y, p)
        if x + y != 0:
            assert vp(x + y, p) >= min(vp(x, p), vp(y, p))
            if vp(x, p) != vp(y, p):
                assert vp(x + y, p) == min(vp(x, p), vp(y, p))


def test_product_formula_exact_on_valuations():
    # |x|_inf equals the product of p^vp(x) over the supporting primes
    rng = random.Random(5)
    for _ in range(200):
        x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        rebuilt = Fraction(1)
        for p in set(_prime_factors(x.numerator) + _prime_factors(x.denominator)):
            rebuilt *= Fraction(p) ** vp(x, p)
        assert rebuilt == abs(x)


def _prime_factors(n):
    from algentropy.numtheory import prime_divisors

    return prime_divisors(n)


def test_pnorm():
    assert pnorm(Fraction(3, 2), 2) == 2
    assert pnorm(0, 3) == 0
    assert pnorm(9, 3) == Fraction(1, 9)


def test_poly_mul_examples():
    assert (IntPoly([-1, 1]) * IntPoly([1, 1])).coeffs == (-1, 0, 1)
    f = IntPoly([4, -7, 0, 2])
    assert (f * IntPoly([1])).coeffs == f.coeffs
    assert (IntPoly([-3, 2]) * IntPoly([-2, 3])).coeffs == (6, -13, 6)


def test_reciprocal():
    assert IntPoly([-3, 2]).reciprocal().coeffs == (2, -3)
    pal = IntPoly([5, -6, 5])
    assert pal.reciprocal() == pal
    f = IntPoly([3, 0, -2, 7])
    assert f.reciprocal().reciprocal() == f
    with pytest.raises(ValueError):
        IntPoly([0, 1]).reciprocal()


def test_poly_gcd_examples():
    g = poly_gcd(IntPoly([-1, 0, 1]), IntPoly([0, -1, 1]))
    assert g == RatPoly([-1, 1])
    f = IntPoly([2, 5, 3])
    assert poly_gcd(f, f) == f.to_rational().monic()
    assert poly_gcd(IntPoly([1, 0, 1]), IntPoly([-1, 0, 1])).degree == 0


def test_poly_gcd_divides_both():
    rng = random.Random(23)
    for _ in range(60):
        base = IntPoly([rng.randint(-5, 5) for _ in range(3)] + [rng.randint(1, 5)])
        f = base * IntPoly([rng.randint(-4, 4) for _ in range(2)] + [rng.randint(1, 4)])
        g = base * IntPoly([rng.randint(-4, 4), rng.randint(1, 4)])
        gcd = poly_gcd(f, g)
        for poly in (f, g):
            _, rem = poly.to_rational().divmod(gcd)
            assert rem.is_zero


def test_primitivize_examples():
    pair = primitivize(RatPoly([Fraction(-3, 2), 1]))
    assert pair.s == 2 and pair.primitive.coeffs == (-3, 2)
    pair = primitivize(RatPoly([1, -2, 1]))
    assert pair.s == 1
    pair = primitivize(RatPoly([Fraction(1, 6), Fraction(-5, 6), 1]))
    assert pair.s == 6 and pair.primitive.coeffs == (1, -5, 6)
    with pytest.raises(ValueError):
        primitivize(RatPoly([1, 2]))


def test_primitivize_minimality():
    from algentropy.numtheory import prime_divisors

    rng = random.Random(3)
    for _ in range(100):
        deg = rng.randint(1, 6)
        coeffs = [
            Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(deg)
        ] + [Fraction(1)]
        pair = primitivize(RatPoly(coeffs))
        assert pair.primitive.content() == 1
        assert pair.primitive.lead == pair.s
        for q in prime_divisors(pair.s):
            smaller = pair.s // q
            assert any(
                (c * smaller).denominator != 1 for c in pair.monic.coeffs
            ), "clearing integer is not minimal"


def test_squarefree_decomposition_roundtrip():
    rng = random.Random(9)
    for _ in range(40):
        f1 = IntPoly([rng.randint(-4, 4), rng.randint(1, 4)])
        f2 = IntPoly([rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(1, 4)])
        product = f1 * f1 * f2
        rebuilt = IntPoly([1])
        for factor, mult in squarefree_decomposition(product):
            for _ in range(mult):
                rebuilt = rebuilt * factor
        assert rebuilt.primitive_part() == product.primitive_part()


def test_cyclotomic_polynomials():
    assert cyclotomic(1).coeffs == (-1, 1)
    assert cyclotomic(2).coeffs == (1, 1)
    assert cyclotomic(4).coeffs == (1, 0, 1)
    assert cyclotomic(6).coeffs == (1, -1, 1)
    assert cyclotomic(105).degree == 48  # first index with coefficient +/-2
    assert 2 in {abs(c) for c in cyclotomic(105).coeffs}


def test_parse_rational():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-7") == -7
    assert parse_rational(4) == 4
    with pytest.raises(ValueError):
        parse_rational("a/b")
