import random

from cmint.numutil import (
    factorize,
    is_perfect_square,
    is_prime,
    is_squarefree,
    ord_p,
    prime_factors,
    primes_up_to,
    squarefree_part,
)


def test_is_prime_matches_sieve():
    sieve = set(primes_up_to(2000))
    for n in range(2000):
        assert is_prime(n) == (n in sieve)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)
    assert not is_prime(561)  # Carmichael
    assert not is_prime(3215031751)


def test_factorize_roundtrip():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(2, 10**9)
        fac = factorize(n)
        prod = 1
        for p, e in fac:
            assert is_prime(p)
            assert e >= 1
            prod *= p**e
        assert prod == n
        assert list(fac) == sorted(fac)


def test_factorize_examples():
    assert factorize(1) == ()
    assert factorize(12) == ((2, 2), (3, 1))
    assert factorize(4840) == ((2, 3), (5, 1), (11, 2))
    assert prime_factors(4840) == (2, 5, 11)


def test_squarefree():
    assert is_squarefree(1) and is_squarefree(2) and is_squarefree(30)
    assert not is_squarefree(4) and not is_squarefree(18)
    assert squarefree_part(18) == 2
    assert squarefree_part(41) == 41


def test_perfect_square():
    squares = {n * n for n in range(100)}
    for n in range(2000):
        assert is_perfect_square(n) == (n in squares)


def test_ord_p():
    assert ord_p(40, 2) == 3
    assert ord_p(40, 5) == 1
    assert ord_p(-40, 2) == 3
    assert ord_p(7, 3) == 0
