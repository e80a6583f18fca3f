"""Algebraic entropy of endomorphisms of Q^N with per-place decomposition.

The total is assembled as (archimedean part from certified complex roots) +
(finite part from Newton polygons), where the finite side is exact integer
arithmetic: the contribution at a prime p dividing the clearing integer s
is vp(s) * log p.  The only floating point in the headline number is the
archimedean sum and the final log multiplications.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import RationalMatrix, char_poly
from .mahler import is_cyclotomic_product, mahler_measure
from .padic import newton_polygon, relevant_primes
from .ratpoly import IntPoly, RatPoly, primitivize, vp
from .roots import ComplexRootSet

INFINITE_PLACE = math.inf


@dataclass(frozen=True)
class EntropyReport:
    total: float
    log_s: float
    archimedean: float
    finite_places: tuple[tuple[int, int, float], ...]  # (p, vp(s), contribution)
    char_poly_monic: RatPoly
    char_poly_primitive: IntPoly
    s: int
    roots: ComplexRootSet | None
    zero_entropy_exact: bool
    certified: bool

    def place_list(self) -> list[tuple[float, float]]:
        """[(place, contribution)] with math.inf marking the archimedean place."""
        places = [(float(p), c) for p, _, c in self.finite_places]
        places.append((INFINITE_PLACE, self.archimedean))
        return places


def algebraic_entropy(
    M: RationalMatrix, tolerance: float = 1e-12, precision: int = 64
) -> EntropyReport:
    """Entropy report for a rational matrix: total, places, certification."""
    if M.n == 0:
        return EntropyReport(
            total=0.0,
            log_s=0.0,
            archimedean=0.0,
            finite_places=(),
            char_poly_monic=RatPoly([1]),
            char_poly_primitive=IntPoly([1]),
            s=1,
            roots=None,
            zero_entropy_exact=True,
            certified=True,
        )
    monic = char_poly(M)
    pair = primitivize(monic)
    P, s = pair.primitive, pair.s

    finite = []
    finite_sum = 0.0
    for p in relevant_primes(P):
        v = vp(s, p)
        mass = newton_polygon(P, p).positive_mass()
        assert mass == v, f"polygon mass {mass} != v_{p}(s) = {v}"
        contribution = v * math.log(p)
        finite.append((p, v, contribution))
        finite_sum += contribution

    measured = mahler_measure(P, tolerance=tolerance, precision=precision)
    arch = measured.archimedean
    total = arch + finite_sum
    # redundant cross-check against the all-floating-point route
    assert abs(total - measured.value) <= 1e-9 * max(1.0, abs(total))

    zero = s == 1 and is_cyclotomic_product(P)
    return EntropyReport(
        total=total,
        log_s=math.log(s),
        archimedean=arch,
        finite_places=tuple(finite),
        char_poly_monic=monic,
        char_poly_primitive=P,
        s=s,
        roots=measured.roots,
        zero_entropy_exact=zero,
        certified=measured.certified,
    )


def ks_entropy(M: RationalMatrix, tolerance: float = 1e-12) -> float:
    """Entropy of an integer matrix: the log-moduli of eigenvalues outside
    the unit circle (the clearing integer is 1, so no finite places)."""
    if not M.is_integer():
        raise ValueError("ks_entropy requires integer matrix entries")
    report = algebraic_entropy(M, tolerance=tolerance)
    assert report.s == 1 and not report.finite_places
    return report.total


def place_decomposition(M: RationalMatrix, tolerance: float = 1e-12):
    """[(place, contribution)] over the primes dividing s plus infinity."""
    return algebraic_entropy(M, tolerance=tolerance).place_list()


def is_zero_entropy(M: RationalMatrix) -> bool:
    """Exact zero-entropy decision, no floating point.

    True iff the primitive characteristic polynomial is monic (s = 1) and a
    product of cyclotomic polynomials times a power of X.
    """
    if M.n == 0:
        return True
    pair = primitivize(char_poly(M))
    return pair.s == 1 and is_cyclotomic_product(pair.primitive)
