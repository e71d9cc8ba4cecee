"""
Which n make x^n - 1 divisible by a polynomial 1 + n_1 x + ... + n_r x^r + ...?

The set of such n has natural density 1/l, where l is the lcm of the indices
carrying a nonzero exponent in the unique factorization
``1 + sum n_i x^i == prod (1 - x^i)^k_i  (mod x^(r+1))``.  This package
computes l, decides membership of individual n exactly, builds explicit
witnesses and counts members up to a bound.
"""
from .arith import delta, divisors, lcm_all, mobius, next_primes, omega, totient
from .engine import (
    brute_member,
    count_members,
    divisor_vector,
    find_witness,
    is_member,
    smallest_member,
    solve_exponents,
    support_profile,
    verify_witness,
)
from .errors import DomainError, InexactDivisionError, InvariantViolation, ResourceLimitError
from .kernel import BACKEND
from .series import (
    IntPoly,
    TruncSeries,
    cyclotomic_exact,
    cyclotomic_trunc,
    one_minus_pow,
    poly_exact_div,
    poly_mul,
    ts_from_seq,
    ts_inv,
    ts_mul,
)

__version__ = "0.1.0"
