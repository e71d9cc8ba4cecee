"""Small built-in invariant battery behind ``cyclodensity selftest``."""
from __future__ import annotations

import random

from . import arith, engine
from .series import IntPoly, cyclotomic_exact, cyclotomic_trunc, poly_mul, ts_from_seq


def _mobius_sums():
    return all(
        sum(arith.mobius(d) for d in arith.divisors(n)) == (1 if n == 1 else 0)
        for n in range(1, 301)
    )


def _cyclotomic_identity():
    for n in range(1, 61):
        prod = IntPoly((1,))
        for d in arith.divisors(n):
            prod = poly_mul(prod, cyclotomic_exact(d))
        if prod != IntPoly.x_pow_minus_one(n):
            return False
    return True


def _trunc_consistency():
    return all(
        cyclotomic_trunc(n, r).coeffs
        == tuple(arith.delta(n) * c for c in cyclotomic_exact(n).truncate(r).coeffs)
        for n in range(1, 61)
        for r in range(0, 7)
    )


def _exponent_roundtrip():
    rng = random.Random(20151109)
    for _ in range(200):
        seq = [rng.randint(-9, 9) for _ in range(rng.randint(0, 6))]
        k = engine.solve_exponents(seq)
        if engine.exponent_product(k) != ts_from_seq(seq):
            return False
    return True


def _oracle_agreement():
    seqs = [[], [-1], [0], [1], [2], [0, 1], [1, 1], [2, 1], [-1, 0]]
    return all(
        engine.is_member(n, s).member == engine.brute_member(n, s).member
        for n in range(1, 31)
        for s in seqs
    )


def _witnesses():
    for seq in ([], [0, 1], [-1], [2, 1], [1, -2, 0], [3, 0, -1]):
        cert = engine.find_witness(seq)
        if not engine.verify_witness(cert, seq, exact=True):
            return False
        if not engine.is_member(cert.n, seq).member:
            return False
    return True


def _small_count():
    table = engine.count_members([0, 1], 100, [10, 100])
    return [row.count for row in table.rows] == [4, 49]


CHECKS = [
    ("mobius_sums", _mobius_sums),
    ("cyclotomic_identity", _cyclotomic_identity),
    ("trunc_consistency", _trunc_consistency),
    ("exponent_roundtrip", _exponent_roundtrip),
    ("oracle_agreement", _oracle_agreement),
    ("witnesses", _witnesses),
    ("small_count", _small_count),
]


def run_checks() -> list[tuple[str, bool]]:
    return [(name, bool(fn())) for name, fn in CHECKS]
