"""Newton polygons of primitive integer polynomials and per-prime entropy.

A polygon at prime p is the lower convex hull of the points (i, vp(b_i))
over the nonzero coefficients b_i.  With the orientation fixed here, a
segment of slope sigma and length ell certifies exactly ell roots (in a
finite extension of Q_p, with multiplicity) of valuation -sigma, i.e. of
p-adic norm p**sigma; so "positive slope <=> contributes entropy" is
literal.  Everything in this module is exact integer/rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .numtheory import is_prime, prime_divisors
from .ratpoly import IntPoly, vp


class Segment(NamedTuple):
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower hull of coefficient valuations at one prime."""

    p: int
    points: tuple[tuple[int, int], ...]
    segments: tuple[Segment, ...]

    def positive_mass(self) -> Fraction:
        """Sum of length * slope over the positive-slope segments.

        For a primitive polynomial this equals vp of the leading
        coefficient exactly (content 1 forces a valuation-0 vertex, and the
        hull climbs from there to (degree, vp(lead))).
        """
        return sum(
            (Fraction(s.length) * s.slope for s in self.segments if s.slope > 0),
            Fraction(0),
        )

    def root_valuations(self) -> list[Fraction]:
        """Multiset of vp(root) = -slope, one entry per certified root."""
        out: list[Fraction] = []
        for s in self.segments:
            out.extend([-s.slope] * s.length)
        return out


class PlaceContribution(NamedTuple):
    exact: Fraction
    value: float


@dataclass(frozen=True)
class PlaceIdentityReport:
    """Exact per-prime comparison of polygon mass against vp(s)."""

    s: int
    per_prime: tuple[tuple[int, int, Fraction, bool], ...]  # (p, vp(s), mass, ok)
    reconstruction_ok: bool  # prod p**vp(s) == s exactly
    log_gap: float  # |log s - sum vp(s) log p| in floating point

    @property
    def all_ok(self) -> bool:
        return self.reconstruction_ok and all(ok for *_, ok in self.per_prime)


def newton_polygon(P: IntPoly, p: int) -> NewtonPolygon:
    """Lower convex hull of (i, vp(b_i)) for a primitive polynomial."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if P.is_zero or P.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if P.content() != 1:
        raise ValueError("polynomial must be primitive (content 1)")
    pts = [(i, vp(c, p)) for i, c in enumerate(P.coeffs) if c != 0]
    # monotone-chain lower hull over points already sorted by abscissa
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep strictly increasing slopes: drop (x2, y2) when the turn
            # is not strictly left, i.e. slope(h2, pt) <= slope(h1, h2)
            if (pt[1] - y2) * (x2 - x1) <= (y2 - y1) * (pt[0] - x2):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = tuple(
        Segment(Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(p=p, points=tuple(pts), segments=segments)


def place_contribution(NP: NewtonPolygon) -> PlaceContribution:
    """Entropy contributed at prime p: (sum of positive slope mass) * log p."""
    exact = NP.positive_mass()
    return PlaceContribution(exact=exact, value=float(exact) * math.log(NP.p))


def relevant_primes(P: IntPoly) -> list[int]:
    """Ascending prime divisors of the leading coefficient.

    These are exactly the primes whose polygon has a positive slope.
    """
    if P.content() != 1:
        raise ValueError("polynomial must be primitive (content 1)")
    return prime_divisors(P.lead)


def verify_place_identity(P: IntPoly) -> PlaceIdentityReport:
    """Check, prime by prime, that the polygon mass equals vp(lead) exactly.

    Also reconstructs |lead| as the product of p**vp(lead) over its prime
    divisors and reports the floating-point gap of the log identity.
    """
    if P.content() != 1:
        raise ValueError("polynomial must be primitive (content 1)")
    s = abs(P.lead)
    rows = []
    product = 1
    log_sum = 0.0
    for p in relevant_primes(P):
        v = vp(s, p)
        mass = newton_polygon(P, p).positive_mass()
        rows.append((p, v, mass, mass == v))
        product *= p**v
        log_sum += v * math.log(p)
    return PlaceIdentityReport(
        s=s,
        per_prime=tuple(rows),
        reconstruction_ok=(product == s),
        log_gap=abs(math.log(s) - log_sum),
    )
