import math
import random
from fractions import Fraction

import pytest

from algentropy.padic import (
    newton_polygon,
    place_contribution,
    relevant_primes,
    verify_place_identity,
)
from algentropy.ratpoly import IntPoly, vp


def test_polygon_examples():
    p = newton_polygon(IntPoly([-3, 2]), 2)
    assert p.points == ((0, 0), (1, 1))
    assert [(s.slope, s.length) for s in p.segments] == [(1, 1)]
    assert p.root_valuations() == [-1]  # root 3/2 has v2 = -1

    p = newton_polygon(IntPoly([1, -5, 6]), 2)
    assert [(s.slope, s.length) for s in p.segments] == [(0, 1), (1, 1)]
    assert sorted(p.root_valuations()) == [-1, 0]  # roots 1/2 and 1/3

    p = newton_polygon(IntPoly([1, 0, 1]), 2)
    assert [(s.slope, s.length) for s in p.segments] == [(0, 2)]


def test_polygon_validation():
    with pytest.raises(ValueError):
        newton_polygon(IntPoly([2, -6]), 2)  # content 2
    with pytest.raises(ValueError):
        newton_polygon(IntPoly([-3, 2]), 6)  # not prime
    with pytest.raises(ValueError):
        newton_polygon(IntPoly([7]), 5)  # constant


def test_polygon_shape_invariants():
    rng = random.Random(17)
    for _ in range(150):
        deg = rng.randint(1, 9)
        coeffs = [rng.randint(-500, 500) for _ in range(deg)] + [rng.randint(1, 500)]
        poly = IntPoly(coeffs).primitive_part()
        if poly.degree < 1:
            continue
        p = rng.choice([2, 3, 5, 7])
        polygon = newton_polygon(poly, p)
        slopes = [s.slope for s in polygon.segments]
        assert all(a < b for a, b in zip(slopes, slopes[1:]))
        first_nonzero = next(i for i, c in enumerate(poly.coeffs) if c != 0)
        assert sum(s.length for s in polygon.segments) == poly.degree - first_nonzero
        assert polygon.points[0][0] == first_nonzero
        assert polygon.points[-1] == (poly.degree, vp(poly.lead, p))


def test_polygon_against_linear_factor_oracle():
    # P = prod (q_i X - r_i) with coprime pairs: the polygon's root
    # valuations at p must equal the multiset {vp(r_i / q_i)}
    rng = random.Random(31)
    for _ in range(120):
        factors = []
        poly = IntPoly([1])
        for _ in range(rng.randint(1, 5)):
            while True:
                q = rng.randint(1, 40)
                r = rng.randint(-40, 40)
                if r != 0 and math.gcd(q, abs(r)) == 1:
                    break
            factors.append((q, r))
            poly = poly * IntPoly([-r, q])
        p = rng.choice([2, 3, 5, 7, 11])
        polygon = newton_polygon(poly.primitive_part(), p)
        expected = sorted(Fraction(vp(Fraction(r, q), p)) for q, r in factors)
        assert sorted(polygon.root_valuations()) == expected


def test_place_contribution_examples():
    c = place_contribution(newton_polygon(IntPoly([-3, 2]), 2))
    assert c.exact == 1 and abs(c.value - math.log(2)) < 1e-15
    c = place_contribution(newton_polygon(IntPoly([1, 0, 1]), 2))
    assert c.exact == 0 and c.value == 0.0
    c = place_contribution(newton_polygon(IntPoly([1, -5, 6]), 3))
    assert c.exact == 1 and abs(c.value - math.log(3)) < 1e-15


def test_relevant_primes():
    assert relevant_primes(IntPoly([1, -5, 6])) == [2, 3]
    assert relevant_primes(IntPoly([-2, 0, 1])) == []
    assert relevant_primes(IntPoly([-1, 10])) == [2, 5]


def test_relevant_primes_match_positive_slopes():
    rng = random.Random(41)
    for _ in range(100):
        deg = rng.randint(1, 8)
        coeffs = [rng.randint(-300, 300) for _ in range(deg)] + [rng.randint(1, 300)]
        poly = IntPoly(coeffs).primitive_part()
        if poly.degree < 1:
            continue
        declared = set(relevant_primes(poly))
        by_polygon = {
            p
            for p in {2, 3, 5, 7, 11, 13}
            if any(s.slope > 0 for s in newton_polygon(poly, p).segments)
        }
        assert by_polygon <= declared
        for p in declared:
            assert any(s.slope > 0 for s in newton_polygon(poly, p).segments)


def test_verify_place_identity_examples():
    rep = verify_place_identity(IntPoly([1, -5, 6]))
    assert rep.all_ok
    assert [(p, v) for p, v, *_ in rep.per_prime] == [(2, 1), (3, 1)]

    rep = verify_place_identity(IntPoly([-2, 0, 1]))  # monic
    assert rep.all_ok and rep.per_prime == () and rep.log_gap == 0.0

    rep = verify_place_identity(IntPoly([5, -6, 5]))
    assert rep.all_ok
    assert rep.per_prime[0][:2] == (5, 1)
