import itertools
import random
from fractions import Fraction

import pytest
import sympy

from cyclodensity import arith, engine
from cyclodensity.engine import (
    brute_member,
    count_members,
    divisor_vector,
    exponent_product,
    find_witness,
    is_member,
    smallest_member,
    solve_exponents,
    subset_product,
    support_profile,
    verify_witness,
)
from cyclodensity.errors import DomainError, ResourceLimitError
from cyclodensity.series import TruncSeries, ts_from_seq


def box_search_exponents(seq, bound=4):
    """Oracle: every k in a box whose product matches ``seq``."""
    r = len(seq)
    target = ts_from_seq(seq)
    return [k for k in itertools.product(range(-bound, bound + 1), repeat=r)
            if exponent_product(k) == target]


@pytest.mark.parametrize("seq, expected", [
    ([3], (-3,)), ([-7], (7,)), ([0, 1], (0, -1)), ([2, 1], (-2, 2)),
    ([0, 0, 0, 0], (0, 0, 0, 0)), ([], ()),
])
def test_solve_exponents_examples(seq, expected):
    assert solve_exponents(seq) == expected


@pytest.mark.parametrize("seq", [[0, 1], [2, 1], [1, -1, 0], [-1, 1, 1], [1, 1, 1]])
def test_solve_exponents_box_oracle(seq):
    found = box_search_exponents(seq)
    assert found == [solve_exponents(seq)]


def test_exponent_roundtrip_and_uniqueness():
    rng = random.Random(2015)
    for _ in range(1000):
        seq = [rng.randint(-9, 9) for _ in range(rng.randint(0, 6))]
        k = solve_exponents(seq)
        assert len(k) == len(seq)
        target = ts_from_seq(seq)
        assert exponent_product(k) == target
        for i in range(len(k)):
            for step in (1, -1):
                bumped = list(k)
                bumped[i] += step
                prod = exponent_product(bumped)
                diff = [j for j in range(len(seq) + 1) if prod.coeffs[j] != target.coeffs[j]]
                assert diff and diff[0] == i + 1


def test_exponents_are_big_ints():
    k = solve_exponents([9] * 24)
    assert exponent_product(k) == ts_from_seq([9] * 24)
    assert max(abs(x) for x in k) > 2**63


@pytest.mark.parametrize("k, support, modulus", [
    ((0, -1), (2,), 2), ((), (), 1), ((-2, 2), (1, 2), 2), ((0, 0, 5, 0, 1), (3, 5), 15),
])
def test_support_profile(k, support, modulus):
    prof = support_profile(k)
    assert prof.support == support and prof.modulus == modulus
    assert prof.density == Fraction(1, modulus)


def test_divisor_vector_examples():
    assert divisor_vector(10, 10, 2).entries == (1, -1)
    assert divisor_vector(1, 12, 3).entries == (1, 0, 0)
    assert divisor_vector(4, 4, 2).entries == (0, -1)
    with pytest.raises(DomainError):
        divisor_vector(3, 10, 2)


def test_divisor_vectors_reproduce_subset_products():
    # the exponents l_m = sum mu(d/m) describe the truncated subset product
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 120)
        r = rng.randint(1, 5)
        divs = arith.divisors(n)
        subset = [d for d in divs if rng.random() < 0.5]
        l = [sum(divisor_vector(d, n, r).entries[m] for d in subset) for m in range(r)]
        assert exponent_product(l) == subset_product(subset, r)


@pytest.mark.parametrize("n, seq, member, cert", [
    (2, [0, 1], False, None), (4, [0, 1], True, (4,)), (6, [0, 1], True, (3, 6)),
    (7, [], True, ()), (1, [], True, ()),
])
def test_is_member_examples(n, seq, member, cert):
    res = is_member(n, seq)
    assert res.member is member and res.certificate == cert
    assert brute_member(n, seq).member is member


@pytest.mark.parametrize("n, seq, member, cert", [
    (2, [0, 1], False, None), (10, [0, 1], True, (5, 10)), (1, [0], True, ()),
])
def test_brute_member_examples(n, seq, member, cert):
    res = brute_member(n, seq)
    assert res.member is member and res.certificate == cert


def test_brute_member_cap():
    with pytest.raises(ResourceLimitError):
        brute_member(720720, [1])


def test_oracle_equivalence(seq_battery):
    for seq in seq_battery:
        for n in range(1, 61):
            fast = is_member(n, seq)
            assert fast.member == brute_member(n, seq).member, (n, seq)
            if fast.member:
                assert subset_product(fast.certificate, len(seq)) == ts_from_seq(seq)
                assert all(n % d == 0 for d in fast.certificate)


def test_shortcut_and_backends_agree(seq_battery):
    from cyclodensity import kernel

    backends = ["python"] + (["compiled"] if kernel.BACKEND == "compiled" else [])
    for seq in seq_battery[::3]:
        for n in range(1, 121):
            ref = is_member(n, seq)
            for b in backends:
                res = is_member(n, seq, fast=False, backend=b)
                assert res.member == ref.member
                if res.member:
                    assert subset_product(res.certificate, len(seq)) == ts_from_seq(seq)
            if len(backends) == 2:
                assert is_member(n, seq, fast=False, backend="python") == is_member(
                    n, seq, fast=False, backend="compiled")


def test_divisibility_filter():
    rng = random.Random(77)
    done = 0
    while done < 500:
        seq = [rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
        l = support_profile(solve_exponents(seq)).modulus
        if l == 1:
            continue
        n = rng.choice([m for m in range(1, 61) if m % l])
        res = is_member(n, seq)
        assert not res.member and res.reason == "lemma2_filter"
        assert not brute_member(n, seq).member
        done += 1


def test_multiples_stay_members(seq_battery):
    for seq in seq_battery:
        members = {n for n in range(1, 61) if is_member(n, seq).member}
        for n in range(1, 31):
            if n in members:
                assert all(t * n in members for t in range(2, 60 // n + 1)), (n, seq)


def test_state_cap_is_loud():
    with pytest.raises(ResourceLimitError, match="n=720"):
        is_member(720, [1, 2, 3, 4], max_states=1, fast=False)
    assert is_member(720, [1, 2, 3, 4], fast=False).member == is_member(720, [1, 2, 3, 4]).member


@pytest.mark.parametrize("seq, n, indices, groups", [
    ([0, 1], 6, (3, 6), ((2, -1, (3,)),)),
    ([-1], 6, (6,), ((1, 1, (6,)),)),
    ([], 1, (), ()),
])
def test_find_witness_examples(seq, n, indices, groups):
    cert = find_witness(seq)
    assert cert.n == n and cert.cyclotomic_indices == indices
    assert tuple((g.index, g.exponent, g.labels) for g in cert.groups) == groups
    assert verify_witness(cert, seq, exact=True)


def test_verify_witness_rejects_bad_certificates():
    cert = find_witness([0, 1])
    bad = engine.WitnessCertificate(5, cert.modulus, cert.groups, cert.cyclotomic_indices)
    verdict = verify_witness(bad, [0, 1])
    assert not verdict and verdict.reason == "index_not_dividing_n"
    assert not verify_witness(cert, [0, 2])
    relabel = engine.WitnessCertificate(
        cert.n, cert.modulus, (engine.WitnessGroup(2, -1, (4,)),), cert.cyclotomic_indices)
    assert verify_witness(relabel, [0, 1]).reason == "label_shape"


def test_exact_check_for_minus_one():
    cert = find_witness([-1])
    verdict = verify_witness(cert, [-1], exact=True)
    assert verdict.ok and verdict.exact_checked
    # independent: sympy divides x^6 - 1 by phi_6
    x = sympy.Symbol("x")
    q, r = sympy.div(x**6 - 1, sympy.cyclotomic_poly(6, x), x)
    assert r == 0


def test_witness_battery_small():
    rng = random.Random(8)
    for _ in range(60):
        seq = [rng.randint(-3, 3) for _ in range(rng.randint(0, 3))]
        cert = find_witness(seq)
        assert verify_witness(cert, seq)
        assert is_member(cert.n, seq).member


def test_prime_substitution_keeps_membership():
    # members l * q1...qk stay members when the q's are swapped for other primes > r
    for seq in ([0, 1], [2, 1], [1, -1, 0], [-2, 0, 1]):
        cert = find_witness(seq)
        r = len(seq)
        large = [p for p, _ in arith.factorize(cert.n) if p > r]
        small = cert.n // arith.lcm_all(large) if large else cert.n
        fresh = arith.next_primes(max(large, default=r) + 10, len(large))
        n2 = small
        for p in fresh:
            n2 *= p
        assert is_member(n2, seq).member


@pytest.mark.parametrize("seq, limit, expected", [([0, 1], 100, 49), ([1], 50, 49), ([], 10, 10)])
def test_count_examples(seq, limit, expected):
    table = count_members(seq, limit, [limit])
    assert table.rows[-1].count == expected
    # oracle: brute-force sweep
    assert sum(brute_member(n, seq, max_divisors=64).member for n in range(1, limit + 1)) == expected


def test_count_table_shape():
    table = count_members([0, 1], 1000, [10, 100, 1000])
    assert [r.x for r in table.rows] == [10, 100, 1000]
    for row in table.rows:
        assert row.count <= row.bound == row.x // 2
        assert row.ratio == Fraction(row.count * 2, row.x)
    with pytest.raises(DomainError):
        count_members([0, 1], 100, [50, 10])
    with pytest.raises(DomainError):
        count_members([0, 1], 100, [200])


@pytest.mark.parametrize("seq, bound, expected", [([0, 1], 100, 4), ([1], 100, 2), ([5], 1, None)])
def test_smallest_member(seq, bound, expected):
    assert smallest_member(seq, bound) == expected
