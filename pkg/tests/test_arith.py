import math

import pytest

from cyclodensity import arith
from cyclodensity.errors import DomainError, ResourceLimitError


@pytest.mark.parametrize("n, expected", [(1, 1), (4, 0), (6, 1), (30, -1), (12, 0), (7, -1)])
def test_mobius(n, expected):
    assert arith.mobius(n) == expected


def test_mobius_divisor_sum():
    for n in range(1, 1001):
        assert sum(arith.mobius(d) for d in arith.divisors(n)) == (1 if n == 1 else 0)


@pytest.mark.parametrize("n, expected", [(1, [1]), (12, [1, 2, 3, 4, 6, 12]), (10, [1, 2, 5, 10])])
def test_divisors(n, expected):
    assert arith.divisors(n) == expected


def test_divisors_pairing_and_brute():
    for n in range(1, 501):
        divs = arith.divisors(n)
        assert divs == [d for d in range(1, n + 1) if n % d == 0]
        assert sorted(n // d for d in divs) == divs


@pytest.mark.parametrize("n, expected", [(1, 0), (12, 2), (30, 3)])
def test_omega(n, expected):
    assert arith.omega(n) == expected


def test_omega_trial_division():
    for n in range(1, 1001):
        brute = sum(1 for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p)))
        assert arith.omega(n) == brute


@pytest.mark.parametrize("d, expected", [(1, -1), (2, 1), (100, 1)])
def test_delta(d, expected):
    assert arith.delta(d) == expected


@pytest.mark.parametrize("values, expected", [([], 1), ([2, 3], 6), ([4, 6], 12)])
def test_lcm_all(values, expected):
    assert arith.lcm_all(values) == expected


@pytest.mark.parametrize(
    "args, expected", [((2, 2, 1), [3, 5]), ((1, 2, 1), [2, 3]), ((3, 2, 5), [7, 11])]
)
def test_next_primes(args, expected):
    assert arith.next_primes(*args) == expected


def test_next_primes_reproducible_and_prime():
    a = arith.next_primes(50, 40, 7 * 61)
    assert a == arith.next_primes(50, 40, 7 * 61)
    assert a == sorted(set(a))
    assert all(p > 50 and 427 % p and arith.is_prime(p) for p in a)
    assert arith.next_primes(10, 0) == []


def test_totient():
    assert arith.totient(1) == 1
    assert arith.totient(6) == 2
    # oracle: product of (p - 1) over 3 * 5 * 7
    assert arith.totient(105) == 2 * 4 * 6 == 48
    for n in range(1, 300):
        assert arith.totient(n) == sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


@pytest.mark.parametrize("fn", [arith.mobius, arith.divisors, arith.omega, arith.totient, arith.delta])
def test_rejects_zero(fn):
    with pytest.raises(DomainError):
        fn(0)


def test_factor_cap():
    # a semiprime above the cap with both factors beyond the trial bound
    big = (2**61 - 1) * (2**89 - 1)
    with pytest.raises(ResourceLimitError):
        arith.factorize(big, cap=10**6)
    # large n with small factors is fine
    assert arith.factorize(2**100 * 3) == ((2, 100), (3, 1))
