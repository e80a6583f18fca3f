"""Exact rational scalars and integer/rational polynomial arithmetic.

Rational scalars are plain ``fractions.Fraction`` values: the stdlib class
already keeps gcd(|num|, den) = 1 with den >= 1, is immutable and hashable,
which is exactly the canonical form the rest of the package relies on for
set membership of vectors.

Polynomials are stored as coefficient tuples in ascending degree order; the
same ascending convention is used in every file format of the CLI.  The zero
polynomial is the single coefficient (0,).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .numtheory import divisors, is_prime

Rational = Union[int, Fraction]

INF = math.inf


def vp(x: Rational, p: int):
    """p-adic valuation of a rational: |x|_p = p**(-vp(x)), vp(0) = +inf.

    The +inf sentinel (rather than an error) gives Newton polygons their
    "point absent" semantics for zero coefficients.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num = abs(x.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def pnorm(x: Rational, p: int) -> Fraction:
    """Exact p-adic norm |x|_p = p**(-vp(x)) as a Fraction; |0|_p = 0."""
    v = vp(x, p)
    if v is INF:
        return Fraction(0)
    return Fraction(p) ** (-v)


def parse_rational(text) -> Fraction:
    """Parse "a/b" or "a" (or an int) into a canonical Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"not a rational: {text!r}")


def _trim(coeffs: list) -> tuple:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """Integer polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        if not cs:
            cs = [0]
        self.coeffs = _trim(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return IntPoly([0])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.coeffs) if len(self.coeffs) > 1 else abs(self.coeffs[0])

    def primitive_part(self) -> "IntPoly":
        """self divided by its content, sign fixed so the lead is positive."""
        c = self.content()
        if c == 0:
            return self
        if self.lead < 0:
            c = -c
        return IntPoly([x // c for x in self.coeffs])

    def reciprocal(self) -> "IntPoly":
        """X^deg * self(1/X): the coefficient list reversed."""
        if self.coeffs[0] == 0:
            raise ValueError("reciprocal requires a nonzero constant term")
        return IntPoly(list(reversed(self.coeffs)))

    def derivative(self) -> "IntPoly":
        if self.degree == 0:
            return IntPoly([0])
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> "IntPoly":
        """Multiply by X^k."""
        if self.is_zero:
            return self
        return IntPoly([0] * k + list(self.coeffs))

    def strip_x(self) -> tuple["IntPoly", int]:
        """Factor out the largest power of X: returns (quotient, k)."""
        if self.is_zero:
            return self, 0
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return IntPoly(self.coeffs[k:]), k

    def divmod_monic(self, g: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Exact Euclidean division by a monic integer polynomial."""
        if g.lead != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dq = len(rem) - len(g.coeffs)
        if dq < 0:
            return IntPoly([0]), self
        quot = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + g.degree]
            if c:
                quot[i] = c
                for j, b in enumerate(g.coeffs):
                    rem[i + j] -= c * b
        return IntPoly(quot), IntPoly(rem[: max(1, g.degree)])

    def try_divide(self, g: "IntPoly") -> "IntPoly | None":
        """Exact quotient self/g over Z, or None if g does not divide self."""
        if g.is_zero:
            return None
        q, r = self.to_rational().divmod(g.to_rational())
        if not r.is_zero:
            return None
        out = []
        for c in q.coeffs:
            if c.denominator != 1:
                return None
            out.append(c.numerator)
        return IntPoly(out)

    def evaluate(self, x):
        """Horner evaluation; works for any ring element (Fraction, mpc, ...)."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_rational(self) -> "RatPoly":
        return RatPoly([Fraction(c) for c in self.coeffs])


class RatPoly:
    """Rational polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        cs = [Fraction(c) for c in coeffs]
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = _trim(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    @property
    def is_monic(self) -> bool:
        return self.lead == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return RatPoly([0])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def monic(self) -> "RatPoly":
        if self.is_zero:
            raise ValueError("zero polynomial has no monic form")
        inv = 1 / self.lead
        return RatPoly([c * inv for c in self.coeffs])

    def derivative(self) -> "RatPoly":
        if self.degree == 0:
            return RatPoly([0])
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, g: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if g.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(g.coeffs)
        if dq < 0:
            return RatPoly([0]), self
        quot = [Fraction(0)] * (dq + 1)
        ginv = 1 / g.lead
        for i in range(dq, -1, -1):
            c = rem[i + g.degree] * ginv
            if c:
                quot[i] = c
                for j, b in enumerate(g.coeffs):
                    rem[i + j] -= c * b
        return RatPoly(quot), RatPoly(rem[: max(1, g.degree)])

    def evaluate(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class PrimitivePair:
    """A monic rational polynomial with its minimal integer clearing.

    ``primitive == s * monic`` coefficient-wise, ``s`` is the least positive
    integer making that integral, and content(primitive) = 1 with leading
    coefficient s.
    """

    monic: RatPoly
    s: int
    primitive: IntPoly


def primitivize(f: RatPoly) -> PrimitivePair:
    """Clear denominators of a monic rational polynomial minimally."""
    if not f.is_monic:
        raise ValueError("primitivize requires a monic polynomial")
    s = 1
    for c in f.coeffs:
        s = s * c.denominator // math.gcd(s, c.denominator)
    primitive = IntPoly([int(c * s) for c in f.coeffs])
    return PrimitivePair(monic=f, s=s, primitive=primitive)


def poly_gcd(f, g) -> RatPoly:
    """Monic gcd over Q of two polynomials (IntPoly or RatPoly)."""
    a = f.to_rational() if isinstance(f, IntPoly) else RatPoly(f.coeffs)
    b = g.to_rational() if isinstance(g, IntPoly) else RatPoly(g.coeffs)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()


def squarefree_decomposition(P: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: P = +/- content * prod A_i^i with A_i squarefree.

    Returns [(A_i primitive with positive lead, i)] for the non-constant
    factors, in increasing multiplicity order.
    """
    if P.is_zero:
        raise ValueError("zero polynomial")
    if P.degree == 0:
        return []
    f = P.to_rational().monic()
    df = f.derivative()
    g = poly_gcd(f, df)
    w, _ = f.divmod(g)
    h, _ = df.divmod(g)
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while w.degree > 0:
        y = h - w.derivative()
        if y.is_zero:
            out.append((_primitive_of(w), i))
            break
        a = poly_gcd(w, y)
        if a.degree > 0:
            out.append((_primitive_of(a), i))
        w, _ = w.divmod(a)
        h, _ = y.divmod(a)
        i += 1
    return out


def _primitive_of(f: RatPoly) -> IntPoly:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPoly([int(c * den) for c in f.coeffs]).primitive_part()


_cyclotomic_cache: dict[int, IntPoly] = {}


def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of X^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    cached = _cyclotomic_cache.get(n)
    if cached is not None:
        return cached
    poly = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in divisors(n):
        if d == n:
            continue
        q, r = poly.divmod_monic(cyclotomic(d))
        assert r.is_zero
        poly = q
    _cyclotomic_cache[n] = poly
    return poly
