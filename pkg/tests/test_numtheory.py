import random

from algentropy.numtheory import divisors, factorize, is_prime, prime_divisors, totient


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for n in range(-3, 42):
        assert is_prime(n) == (n in primes)


def test_is_prime_carmichael_and_big():
    assert not is_prime(561)
    assert not is_prime(1729)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)


def test_factorize_roundtrip():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(2, 10**9)
        factors = factorize(n)
        product = 1
        for p, e in factors.items():
            assert is_prime(p)
            product *= p**e
        assert product == n


def test_factorize_large_smooth_and_semiprime():
    n = 2**30 * 3**20 * 7**5
    assert factorize(n) == {2: 30, 3: 20, 7: 5}
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q) == {p: 1, q: 1}


def test_prime_divisors_sorted():
    assert prime_divisors(60) == [2, 3, 5]
    assert prime_divisors(-10) == [2, 5]
    assert prime_divisors(1) == []


def test_totient():
    assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
