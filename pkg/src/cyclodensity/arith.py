"""
Elementary number theory: factorization by trial division, Moebius function,
divisors, prime selection.

Everything here is deterministic.  Inputs above ``FACTOR_CAP`` are refused
instead of being handed to a probabilistic test.
"""
from __future__ import annotations

import threading
from functools import lru_cache, reduce
from math import gcd, isqrt

from .errors import DomainError, ResourceLimitError

FACTOR_CAP = 2**63 - 1

PrimeList = list[int]


def _check_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"{name} must be >= 1, got {n}")


@lru_cache(maxsize=65536)
def _factor(n: int, trial_limit: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    while p * p <= n:
        if p > trial_limit:
            raise ResourceLimitError(
                f"cofactor {n} needs trial division beyond {trial_limit}"
            )
        for q in (p, p + 2):
            if n % q == 0:
                e = 0
                while n % q == 0:
                    n //= q
                    e += 1
                out.append((q, e))
        p += 6
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int, cap: int = FACTOR_CAP) -> tuple[tuple[int, int], ...]:
    """
    Prime factorization as ``((p1, e1), (p2, e2), ...)`` with increasing primes.

    ``cap`` bounds the work, not the input: trial division stops at
    ``isqrt(cap)``, so every ``n <= cap`` factors, and so does any larger ``n``
    whose prime factors other than the largest are below that bound.

    >>> factorize(360)
    ((2, 3), (3, 2), (5, 1))
    >>> factorize(1)
    ()
    """
    _check_positive(n)
    return _factor(n, isqrt(cap))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    p = 5
    while p * p <= n:
        if n % p == 0 or n % (p + 2) == 0:
            return False
        p += 6
    return True


def mobius(n: int) -> int:
    """
    >>> [mobius(k) for k in range(1, 11)]
    [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    """
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int, cap: int = FACTOR_CAP) -> list[int]:
    """All divisors of ``n`` in increasing order."""
    divs = [1]
    for p, e in factorize(n, cap):
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n))


def delta(d: int) -> int:
    """Sign that turns a cyclotomic polynomial into one with constant term 1."""
    _check_positive(d, "d")
    return -1 if d == 1 else 1


def lcm_all(values) -> int:
    """
    >>> lcm_all([])
    1
    >>> lcm_all([4, 6])
    12
    """
    values = list(values)
    for v in values:
        _check_positive(v, "value")
    return reduce(lambda a, b: a // gcd(a, b) * b, values, 1)


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


class _PrimeTable:
    """Primes in increasing order, extended on demand by trial division."""

    def __init__(self):
        self._primes = [2, 3]
        self._lock = threading.Lock()

    def _extend(self) -> None:
        c = self._primes[-1] + 2
        while True:
            lim = isqrt(c)
            for p in self._primes:
                if p > lim:
                    self._primes.append(c)
                    return
                if c % p == 0:
                    break
            c += 2

    def get(self, i: int) -> int:
        primes = self._primes
        if i < len(primes):
            return primes[i]
        with self._lock:
            while len(self._primes) <= i:
                self._extend()
            return self._primes[i]


_TABLE = _PrimeTable()


def next_primes(lower: int, count: int, coprime_to: int = 1) -> PrimeList:
    """
    The ``count`` smallest primes ``p > lower`` with ``p`` not dividing ``coprime_to``.

    >>> next_primes(3, 2, 5)
    [7, 11]
    """
    if count < 0:
        raise DomainError(f"count must be >= 0, got {count}")
    _check_positive(coprime_to, "coprime_to")
    out: PrimeList = []
    i = 0
    while len(out) < count:
        p = _TABLE.get(i)
        i += 1
        if p > lower and coprime_to % p != 0:
            out.append(p)
    return out
