"""
Exponent vectors, membership in S(n_1, ..., n_r), witness construction and
the counting function N(n_1, ..., n_r; x).

A divisor of x^n - 1 with constant term 1 is a product of normalized
cyclotomic factors ``delta(d) * phi_d`` over a subset T of the divisors of n.
Modulo x^(r+1) such a product is ``prod (1 - x^m)^(l_m)`` with
``l_m = sum_{d in T, m | d} mu(d/m)``, and exponent vectors of this shape are
unique.  Membership is therefore an integer feasibility problem on the vectors
``(mu(d/m))_m``, which is what :func:`is_member` solves.
"""
from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import arith, kernel
from .errors import DomainError, ResourceLimitError
from .series import (
    IntPoly,
    TruncSeries,
    cyclotomic_exact,
    cyclotomic_trunc,
    kron_mul,
    one_minus_pow,
    poly_divmod,
    poly_exact_div,
    poly_mul,
    ts_from_seq,
    ts_mul,
    x_pow_mod,
)

log = logging.getLogger(__name__)

CoeffSeq = Sequence[int]
ExponentVec = tuple[int, ...]

DEFAULT_MAX_STATES = 10**7
DEFAULT_MAX_DIVISORS = 100_000
DEFAULT_BRUTE_DIVISORS = 20
DEFAULT_DEGREE_BOUND = 5000
# above this n the exact check reduces x^n modulo the product instead of dividing
EXACT_DIV_MAX_N = 20_000


@dataclass(frozen=True)
class SupportProfile:
    support: tuple[int, ...]
    modulus: int
    density: Fraction


@dataclass(frozen=True)
class DivisorVector:
    divisor: int
    entries: tuple[int, ...]


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    certificate: tuple[int, ...] | None
    reason: str  # "lemma2_filter", "infeasible" or "certified"


@dataclass(frozen=True)
class WitnessGroup:
    index: int
    exponent: int
    labels: tuple[int, ...]


@dataclass(frozen=True)
class WitnessCertificate:
    n: int
    modulus: int
    groups: tuple[WitnessGroup, ...]
    cyclotomic_indices: tuple[int, ...]


@dataclass(frozen=True)
class WitnessVerdict:
    ok: bool
    reason: str
    exact_checked: bool = False

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CountRow:
    x: int
    count: int
    bound: int  # floor(x / l)
    ratio: Fraction  # count * l / x


@dataclass
class CountTable:
    seq: tuple[int, ...]
    modulus: int
    rows: list[CountRow] = field(default_factory=list)


def _as_seq(seq: CoeffSeq) -> tuple[int, ...]:
    out = tuple(seq)
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool):
            raise DomainError(f"sequence entries must be integers, got {v!r}")
    return out


def solve_exponents(seq: CoeffSeq) -> ExponentVec:
    """
    The unique ``k`` with ``prod (1 - x^i)^k_i == 1 + sum n_i x^i  (mod x^(r+1))``.

    >>> solve_exponents([2, 1])
    (-2, 2)
    """
    seq = _as_seq(seq)
    r = len(seq)
    prod = TruncSeries.one(r)
    k = []
    for i in range(1, r + 1):
        ki = prod.coeffs[i] - seq[i - 1]
        k.append(ki)
        if ki:
            prod = ts_mul(prod, one_minus_pow(i, ki, r))
    return tuple(k)


def exponent_product(k: Sequence[int]) -> TruncSeries:
    r = len(k)
    out = TruncSeries.one(r)
    for i, ki in enumerate(k, 1):
        if ki:
            out = ts_mul(out, one_minus_pow(i, ki, r))
    return out


def support_profile(k: Sequence[int]) -> SupportProfile:
    support = tuple(i for i, ki in enumerate(k, 1) if ki != 0)
    modulus = arith.lcm_all(support)
    return SupportProfile(support, modulus, Fraction(1, modulus))


def modulus_of(seq: CoeffSeq) -> int:
    return support_profile(solve_exponents(seq)).modulus


def _vector(d: int, r: int) -> tuple[int, ...]:
    return tuple(arith.mobius(d // m) if d % m == 0 else 0 for m in range(1, r + 1))


def divisor_vector(d: int, n: int, r: int) -> DivisorVector:
    """Contribution of ``delta(d) * phi_d`` to each exponent ``l_m``, ``m <= r``."""
    arith._check_positive(d, "d")
    arith._check_positive(n)
    if n % d:
        raise DomainError(f"{d} does not divide {n}")
    return DivisorVector(d, _vector(d, r))


def _squarefree_products(primes: list[int]) -> Iterator[tuple[int, int]]:
    """Yield ``(product, subset size)`` over all subsets, in increasing product."""
    yield 1, 0
    if not primes:
        return
    heap = [(primes[0], 0, 1)]
    last = len(primes) - 1
    while heap:
        prod, i, size = heapq.heappop(heap)
        yield prod, size
        if i < last:
            nxt = primes[i + 1]
            heapq.heappush(heap, (prod * nxt, i + 1, size + 1))
            heapq.heappush(heap, (prod // primes[i] * nxt, i + 1, size))


def _members(a: int, parity: int, primes: list[int]) -> Iterator[int]:
    for b, size in _squarefree_products(primes):
        if size % 2 == parity:
            yield a * b


@dataclass
class _Group:
    vector: tuple[int, ...]
    size: int = 0
    sources: list[tuple[int, int]] = field(default_factory=list)  # (a, parity)
    first: int = 0


def _groups(n: int, r: int, max_divisors: int) -> list[_Group]:
    """
    Divisors of ``n`` grouped by nonzero divisor vector, sizes in closed form.

    Write a divisor as ``a * b`` with ``a`` built from primes <= r and ``b`` from
    primes > r.  Then the vector is ``mu(b) * vector(a)`` when ``b`` is squarefree
    and zero otherwise, so half of the squarefree ``b`` carry each sign.
    """
    fac = arith.factorize(n)
    small = [(p, e) for p, e in fac if p <= r]
    large = [p for p, _ in fac if p > r]
    n_small_divs = 1
    for _, e in small:
        n_small_divs *= e + 1
    if n_small_divs > max_divisors:
        raise ResourceLimitError(
            f"n={n}: {n_small_divs} divisors built from primes <= {r} exceed the cap {max_divisors}"
        )
    small_divs = [1]
    for p, e in small:
        small_divs = [d * p**j for d in small_divs for j in range(e + 1)]
    small_divs.sort()

    s = len(large)
    half = 1 << (s - 1) if s else 0
    p_min = large[0] if large else 0
    groups: dict[tuple[int, ...], _Group] = {}

    def add(vec, count, a, parity, first):
        grp = groups.get(vec)
        if grp is None:
            grp = groups[vec] = _Group(vec, first=first)
        grp.size += count
        grp.sources.append((a, parity))
        grp.first = min(grp.first, first)

    for a in small_divs:
        vec = _vector(a, r)
        if not any(vec):
            continue
        if s == 0:
            add(vec, 1, a, 0, a)
        else:
            add(vec, half, a, 0, a)
            add(tuple(-x for x in vec), half, a, 1, a * p_min)
    return sorted(groups.values(), key=lambda grp: grp.first)


def _take_smallest(grp: _Group, t: int, primes: list[int]) -> list[int]:
    streams = [_members(a, parity, primes) for a, parity in grp.sources]
    return list(itertools.islice(heapq.merge(*streams), t))


def _triangular_choice(groups: list[_Group], k: ExponentVec, n: int) -> list[int] | None:
    """
    Try the solution that uses only the vectors of divisors ``a <= r``.

    ``vector(a)`` has a 1 in position ``a`` and is zero past it, so these
    vectors form a unitriangular system with exactly one integer solution.  It
    is returned when its multiplicities fit the group sizes; otherwise the
    caller falls back to the exhaustive search.
    """
    r = len(k)
    where = {grp.vector: g for g, grp in enumerate(groups)}
    residual = list(k)
    t = [0] * len(groups)
    for a in range(r, 0, -1):
        c = residual[a - 1]
        if not c or n % a:
            continue
        vec = _vector(a, r)
        for m in range(r):
            residual[m] -= c * vec[m]
        if c < 0:
            vec = tuple(-x for x in vec)
        g = where.get(vec)
        if g is None or abs(c) > groups[g].size:
            return None
        t[g] = abs(c)
    return None if any(residual) else t


def is_member(
    n: int,
    seq: CoeffSeq,
    max_states: int = DEFAULT_MAX_STATES,
    max_divisors: int = DEFAULT_MAX_DIVISORS,
    backend: str | None = None,
    fast: bool = True,
) -> MembershipResult:
    """
    Decide whether x^n - 1 has a divisor ``1 + n_1 x + ... + n_r x^r + ...``.

    ``fast=False`` skips the unitriangular shortcut and always runs the
    exhaustive multiplicity search.
    """
    arith._check_positive(n)
    k = solve_exponents(seq)
    r = len(k)
    for m, km in enumerate(k, 1):
        if km and n % m:
            return MembershipResult(False, None, "lemma2_filter")
    if r == 0:
        return MembershipResult(True, (), "certified")

    groups = _groups(n, r, max_divisors)
    t = _triangular_choice(groups, k, n) if fast else None
    if t is None:
        try:
            t = kernel.search(
                [g.vector for g in groups], [g.size for g in groups], k, max_states, backend
            )
        except ResourceLimitError as exc:
            raise ResourceLimitError(f"n={n}: {exc}") from exc
    if t is None:
        return MembershipResult(False, None, "infeasible")
    large = [p for p, _ in arith.factorize(n) if p > r]
    cert: list[int] = []
    for grp, tg in zip(groups, t):
        if tg:
            cert.extend(_take_smallest(grp, tg, large))
    return MembershipResult(True, tuple(sorted(cert)), "certified")


def subset_product(divs: Sequence[int], r: int) -> TruncSeries:
    """``prod delta(d) * phi_d`` over ``divs`` modulo x^(r+1)."""
    out = TruncSeries.one(r)
    for d in divs:
        out = ts_mul(out, cyclotomic_trunc(d, r))
    return out


def brute_member(
    n: int, seq: CoeffSeq, max_divisors: int = DEFAULT_BRUTE_DIVISORS
) -> MembershipResult:
    """
    Reference decision: try every subset of divisors, smallest subsets first.

    Independent of the exponent machinery; only truncated series products.
    """
    seq = _as_seq(seq)
    r = len(seq)
    divs = arith.divisors(n)
    if len(divs) > max_divisors:
        raise ResourceLimitError(
            f"n={n} has {len(divs)} divisors, above the brute-force cap {max_divisors}"
        )
    target = ts_from_seq(seq, r)
    factor = {d: cyclotomic_trunc(d, r) for d in divs}
    for size in range(len(divs) + 1):
        for combo in itertools.combinations(divs, size):
            prod = TruncSeries.one(r)
            for d in combo:
                prod = ts_mul(prod, factor[d])
            if prod == target:
                return MembershipResult(True, combo, "certified")
    return MembershipResult(False, None, "infeasible")


def find_witness(seq: CoeffSeq) -> WitnessCertificate:
    """
    Explicit member of the form ``l * q_1 * ... * q_k`` with primes ``q_j > r``.

    For ``k_i < 0`` each of the ``|k_i|`` labels is a fresh prime ``p`` and the
    factors ``phi_{d p}``, ``d | i``, multiply to ``(1 - x^i)^-1``; for ``k_i > 0``
    each label is a product of two fresh primes and the factors multiply to
    ``1 - x^i``.  Primes are handed out smallest first, groups in increasing i.
    """
    k = solve_exponents(seq)
    r = len(k)
    prof = support_profile(k)
    needed = sum(-ki if ki < 0 else 2 * ki for ki in k)
    pool = iter(arith.next_primes(r, needed))
    groups = []
    indices = []
    for i, ki in enumerate(k, 1):
        if not ki:
            continue
        if ki < 0:
            labels = tuple(next(pool) for _ in range(-ki))
        else:
            labels = tuple(next(pool) * next(pool) for _ in range(ki))
        groups.append(WitnessGroup(i, ki, labels))
        for lab in labels:
            indices.extend(d * lab for d in arith.divisors(i))
    n = arith.lcm_all(indices)
    return WitnessCertificate(n, prof.modulus, tuple(groups), tuple(sorted(indices)))


def _label_ok(label: int, exponent: int, r: int) -> bool:
    fac = arith.factorize(label)
    if any(p <= r or e != 1 for p, e in fac):
        return False
    return len(fac) == (1 if exponent < 0 else 2)


def verify_witness(
    cert: WitnessCertificate,
    seq: CoeffSeq,
    exact: bool = False,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> WitnessVerdict:
    """Check a certificate; the verdict is falsy and names the first failed check."""
    seq = _as_seq(seq)
    r = len(seq)
    idx = cert.cyclotomic_indices
    if len(set(idx)) != len(idx):
        return WitnessVerdict(False, "duplicate_index")
    if cert.n < 1 or any(i < 1 or cert.n % i for i in idx):
        return WitnessVerdict(False, "index_not_dividing_n")
    k = solve_exponents(seq)
    if cert.modulus != support_profile(k).modulus or cert.n % cert.modulus:
        return WitnessVerdict(False, "modulus_mismatch")
    labels = [lab for grp in cert.groups for lab in grp.labels]
    if len(set(labels)) != len(labels):
        return WitnessVerdict(False, "duplicate_label")
    for grp in cert.groups:
        if grp.exponent == 0 or len(grp.labels) != abs(grp.exponent):
            return WitnessVerdict(False, "label_count")
        if not all(_label_ok(lab, grp.exponent, r) for lab in grp.labels):
            return WitnessVerdict(False, "label_shape")
    if subset_product(idx, r) != ts_from_seq(seq, r):
        return WitnessVerdict(False, "truncated_product")
    if not exact:
        return WitnessVerdict(True, "verified")
    if sum(arith.totient(i) for i in idx) > degree_bound:
        return WitnessVerdict(True, "verified_exact_skipped")
    prod = [1]
    for i in idx:
        prod = kron_mul(prod, list(cyclotomic_exact(i).coeffs))
    prod = IntPoly(tuple(prod))
    if cert.n <= EXACT_DIV_MAX_N:
        _, rem = poly_divmod(IntPoly.x_pow_minus_one(cert.n), prod)
        divides = rem.is_zero()
    else:
        divides = prod.degree == 0 or x_pow_mod(cert.n, prod) == IntPoly((1,))
    if not divides:
        return WitnessVerdict(False, "exact_division", True)
    return WitnessVerdict(True, "verified_exact", True)


def count_members(
    seq: CoeffSeq,
    limit: int,
    checkpoints: Sequence[int] | None = None,
    max_states: int = DEFAULT_MAX_STATES,
    backend: str | None = None,
) -> CountTable:
    """
    N(x) at each checkpoint.  Only multiples of l can be members, so only
    those are tested.
    """
    seq = _as_seq(seq)
    arith._check_positive(limit, "limit")
    checkpoints = [limit] if checkpoints is None else list(checkpoints)
    if not checkpoints:
        raise DomainError("at least one checkpoint is required")
    if checkpoints != sorted(checkpoints) or checkpoints[-1] > limit or checkpoints[0] < 1:
        raise DomainError("checkpoints must be sorted, positive and <= limit")
    l = modulus_of(seq)
    table = CountTable(seq, l)
    count = 0
    n = l
    for x in checkpoints:
        while n <= x:
            if is_member(n, seq, max_states=max_states, backend=backend).member:
                count += 1
            n += l
        table.rows.append(CountRow(x, count, x // l, Fraction(count * l, x)))
    log.debug("count %s up to %d: %s", seq, limit, table.rows[-1])
    return table


def smallest_member(
    seq: CoeffSeq, bound: int, max_states: int = DEFAULT_MAX_STATES
) -> int | None:
    arith._check_positive(bound, "bound")
    l = modulus_of(seq)
    for n in range(l, bound + 1, l):
        if is_member(n, seq, max_states=max_states).member:
            return n
    return None
