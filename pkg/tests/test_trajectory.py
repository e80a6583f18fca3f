import json
import math
from fractions import Fraction

import pytest

from algentropy.entropy import algebraic_entropy
from algentropy.linalg import RationalMatrix
from algentropy.ratpoly import vp
from algentropy.trajectory import (
    EXPONENTIAL,
    INCONCLUSIVE,
    POLYNOMIAL,
    admissible_m,
    bernoulli_counts,
    classify_growth,
    fraction_grid,
    minor_trajectory_counts,
    prime_support,
    trajectory_counts,
)

from oracles import naive_trajectory_counts

DOUBLING = RationalMatrix([[2]])
THREE_HALVES = RationalMatrix([["3/2"]])
ROTATION = RationalMatrix([[0, -1], [1, 0]])
NONARCH = RationalMatrix([[0, "-1/6"], [1, "5/6"]])


def test_fraction_grid():
    assert fraction_grid(1, 1) == {(-1,), (0,), (1,)}
    g = fraction_grid(1, 2)
    assert g == {(Fraction(j, 2),) for j in range(-2, 3)} and len(g) == 5
    assert len(fraction_grid(2, 1)) == 9
    grid = fraction_grid(2, 3)
    assert all(tuple(-c for c in v) in grid for v in grid)
    assert (Fraction(0), Fraction(0)) in grid


def test_prime_support():
    assert prime_support(THREE_HALVES, 1).sorted() == (2,)
    assert prime_support(DOUBLING, 1).sorted() == ()
    assert prime_support(DOUBLING, 6).sorted() == (2, 3)
    assert prime_support(NONARCH, 10).sorted() == (2, 3, 5)


def test_admissible_m_examples():
    assert admissible_m(THREE_HALVES) == 6
    assert admissible_m(DOUBLING) == 3
    assert admissible_m(RationalMatrix.identity(2)) == 3
    assert admissible_m(NONARCH) == 18


def test_counts_closed_forms():
    run = trajectory_counts(DOUBLING, 1, 12)
    assert run.counts == tuple(2 ** (n + 1) - 1 for n in range(1, 13))
    run = trajectory_counts(THREE_HALVES, 1, 12)
    assert run.counts == tuple(3**n for n in range(1, 13))
    assert run.h_inc[-1] == math.log(3)
    run = trajectory_counts(ROTATION, 1, 20)
    assert run.counts == tuple((2 * n + 1) ** 2 for n in range(1, 21))


def test_matches_naive_enumeration():
    # the scaled-integer engine against direct Fraction sumsets
    for M, m, n in (
        (THREE_HALVES, 1, 7),
        (THREE_HALVES, 2, 5),
        (NONARCH, 1, 5),
        (NONARCH, 2, 4),
        (RationalMatrix([[1, 1], [0, 1]]), 1, 6),
        (RationalMatrix([["-2/3"]]), 1, 6),
    ):
        expected, points = naive_trajectory_counts(M, m, n)
        run = trajectory_counts(M, m, n)
        assert run.counts == tuple(expected)
        # containment: outside the support, all coordinates are p-integral
        support = prime_support(M, m).primes
        for p in (2, 3, 5, 7):
            if p in support:
                continue
            for vec in points:
                assert all(vp(c, p) >= 0 for c in vec if c != 0)


def test_exact_path_matches_packed_path():
    for M, m, n in ((THREE_HALVES, 1, 8), (NONARCH, 1, 5), (ROTATION, 1, 10)):
        fast = trajectory_counts(M, m, n)
        slow = trajectory_counts(M, m, n, force_exact=True)
        assert fast.counts == slow.counts


def test_three_dimensional_against_naive():
    M = RationalMatrix([[0, 1, 0], [0, 0, 1], [1, 0, "1/2"]])
    expected, _ = naive_trajectory_counts(M, 1, 4)
    run = trajectory_counts(M, 1, 4)
    assert run.counts == tuple(expected)
    N = RationalMatrix([[1, 1, 0], [0, 1, 0], [0, 0, -1]])
    expected, _ = naive_trajectory_counts(N, 1, 5)
    assert trajectory_counts(N, 1, 5).counts == tuple(expected)


def test_int64_overflow_falls_back_to_exact():
    # nilpotent with denominator 6: the storage scale 6^(n-1) overflows the
    # packed-key path around n = 13 while the counts stay tiny
    M = RationalMatrix([[0, "1/6"], [0, 0]])
    fast = trajectory_counts(M, 1, 30)
    slow = trajectory_counts(M, 1, 30, force_exact=True)
    assert fast.counts == slow.counts
    assert fast.counts[-1] == 27


def test_nesting_and_subadditivity_exposed():
    run = trajectory_counts(RationalMatrix([[2, 1], [1, 1]]), 1, 9)
    for a, b in zip(run.counts, run.counts[1:]):
        assert b >= a
    L = run.levels
    for a in range(1, L + 1):
        for b in range(a, L - a + 1):
            assert run.counts[a + b - 1] <= run.counts[a - 1] * run.counts[b - 1]


def test_fekete_consistency():
    for M, m, n in (
        (DOUBLING, 1, 12),
        (THREE_HALVES, 1, 10),
        (ROTATION, 1, 30),
        (NONARCH, 1, 8),
    ):
        run = trajectory_counts(M, m, n)
        window = run.h_inc[-5:]
        assert run.h_cum[-1] >= sum(window) / len(window) - 1e-9


def test_monotone_in_grid_density():
    for M in (THREE_HALVES, NONARCH):
        coarse = trajectory_counts(M, 1, 5)
        fine = trajectory_counts(M, 2, 5)
        assert all(a <= b for a, b in zip(coarse.counts, fine.counts))
        assert coarse.h_cum[-1] <= fine.h_cum[-1] + 1e-12


def test_budget_truncation():
    run = trajectory_counts(THREE_HALVES, 1, 12, budget=1000)
    assert run.budget_exhausted_at == 7  # tau(7) = 2187 > 1000
    assert run.counts == tuple(3**n for n in range(1, 7))
    with pytest.raises(ValueError):
        trajectory_counts(THREE_HALVES, 1, 5, budget=2)


def test_partition_determinism():
    for M, m, n in ((THREE_HALVES, 1, 9), (NONARCH, 1, 6), (ROTATION, 1, 15)):
        runs = [trajectory_counts(M, m, n, partitions=p) for p in (1, 2, 8)]
        blobs = {json.dumps([str(c) for c in r.counts]).encode() for r in runs}
        assert len(blobs) == 1


def test_classification():
    rot = trajectory_counts(ROTATION, 1, 50)
    assert classify_growth(rot).classification == POLYNOMIAL
    doubling = trajectory_counts(DOUBLING, 1, 12)
    assert classify_growth(doubling).classification == EXPONENTIAL
    ident = trajectory_counts(RationalMatrix.identity(2), 1, 12)
    assert classify_growth(ident).classification == POLYNOMIAL
    unipotent = trajectory_counts(RationalMatrix([[1, 1], [0, 1]]), 1, 12)
    assert classify_growth(unipotent).classification == POLYNOMIAL

    formula = algebraic_entropy(ROTATION).total
    verdict = classify_growth(rot, formula_entropy=formula)
    assert verdict.classification == POLYNOMIAL and not verdict.discrepancy
    # a wrong formula value must be flagged
    assert classify_growth(rot, formula_entropy=1.0).discrepancy

    with pytest.raises(ValueError):
        classify_growth(trajectory_counts(DOUBLING, 1, 5))


def test_minor_trajectory():
    counts = minor_trajectory_counts(DOUBLING, 1, 5)
    assert counts[4] == 9  # |{-1,0,1} + {-16,0,16}|
    assert counts[0] <= 5  # |E + E| for m=1, N=1
    grid = 3**2
    assert all(c <= grid for c in counts)
    ident = minor_trajectory_counts(RationalMatrix.identity(2), 1, 6)
    assert len(set(ident)) == 1  # constant in n
    rot = minor_trajectory_counts(ROTATION, 1, 8)
    assert all(c <= 9**2 for c in rot)


def test_bernoulli():
    for q in (2, 3, 5):
        run = bernoulli_counts(q, 8)
        assert run.counts == tuple(q**n for n in range(1, 9))
        assert all(h == math.log(q) for h in run.h_inc)
        assert run.estimate == math.log(q)
    assert bernoulli_counts(2, 1).counts == (2,)
    with pytest.raises(ValueError):
        bernoulli_counts(1, 4)


def test_validation_errors():
    with pytest.raises(ValueError):
        trajectory_counts(RationalMatrix([]), 1, 3)
    with pytest.raises(ValueError):
        trajectory_counts(DOUBLING, 0, 3)
    with pytest.raises(ValueError):
        trajectory_counts(DOUBLING, 1, 0)


def test_inconclusive_constant():
    assert INCONCLUSIVE == "Inconclusive"
