"""
Exact integer polynomials and power series truncated modulo x^(r+1).

Coefficients are Python ints throughout, so nothing overflows no matter how
large the exponents get.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import arith

try:
    from gmpy2 import mpz as _mpz
except ImportError:
    _mpz = None
from .errors import DomainError, InexactDivisionError


@dataclass(frozen=True)
class TruncSeries:
    """A power series known modulo ``x**(order + 1)``."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"order must be >= 0, got {self.order}")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.order + 1:
            raise DomainError(
                f"a series of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls(order, (1,) + (0,) * order)

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        return ts_mul(self, other)

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.order, tuple(-c for c in self.coeffs))

    def __str__(self):
        return _render(self.coeffs) + f" + O(x^{self.order + 1})"


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def x_pow_minus_one(cls, n: int) -> IntPoly:
        return cls((-1,) + (0,) * (n - 1) + (1,))

    def truncate(self, order: int) -> TruncSeries:
        c = list(self.coeffs[: order + 1])
        return TruncSeries(order, c + [0] * (order + 1 - len(c)))

    def __mul__(self, other: IntPoly) -> IntPoly:
        return poly_mul(self, other)

    def __str__(self):
        return _render(self.coeffs)


def _render(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' if mono else ''}{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def ts_from_seq(seq, order: int | None = None) -> TruncSeries:
    """The series ``1 + n_1 x + ... + n_r x^r``."""
    seq = list(seq)
    if order is None:
        order = len(seq)
    if len(seq) != order:
        raise DomainError(f"sequence of length {len(seq)} does not match order {order}")
    return TruncSeries(order, [1] + seq)


def _check_orders(a: TruncSeries, b: TruncSeries) -> None:
    if a.order != b.order:
        raise DomainError(f"order mismatch: {a.order} vs {b.order}")


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    _check_orders(a, b)
    r = a.order
    out = [0] * (r + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j in range(r + 1 - i):
                out[i + j] += ai * bc[j]
    return TruncSeries(r, out)


def ts_inv(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant term must be a unit (+1 or -1)."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise DomainError(f"constant term {c0} is not a unit in Z[[x]]")
    r = a.order
    out = [0] * (r + 1)
    out[0] = c0
    for i in range(1, r + 1):
        s = sum(a.coeffs[j] * out[i - j] for j in range(1, i + 1))
        # c0 * out[i] + s = 0 and c0 == 1/c0
        out[i] = -s * c0
    return TruncSeries(r, out)


def binom(e: int, j: int) -> int:
    """Generalized binomial coefficient, valid for any integer ``e``."""
    num = 1
    for t in range(j):
        num *= e - t
    return num // factorial(j)


def one_minus_pow(i: int, e: int, order: int) -> TruncSeries:
    """
    ``(1 - x**i) ** e`` modulo ``x**(order + 1)`` for any integer ``e``.

    >>> one_minus_pow(1, -3, 1).coeffs
    (1, 3)
    """
    if i < 1:
        raise DomainError(f"i must be >= 1, got {i}")
    out = [0] * (order + 1)
    for j in range(order // i + 1):
        out[i * j] = binom(e, j) * (-1) ** j
    return TruncSeries(order, out)


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if a.is_zero() or b.is_zero():
        return IntPoly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(bc):
                out[i + j] += ai * bj
    return IntPoly(tuple(out))


def poly_divmod(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Long division by a divisor whose leading coefficient is +1 or -1."""
    if den.is_zero():
        raise DomainError("division by the zero polynomial")
    lead = den.coeffs[-1]
    if lead not in (1, -1):
        raise DomainError(f"leading coefficient {lead} of the divisor is not a unit")
    rem = list(num.coeffs)
    dd = den.degree
    if len(rem) <= dd:
        return IntPoly(), num
    quo = [0] * (len(rem) - dd)
    dc = den.coeffs
    for k in range(len(rem) - 1 - dd, -1, -1):
        q = rem[k + dd] * lead
        if q:
            quo[k] = q
            for j in range(dd + 1):
                rem[k + j] -= q * dc[j]
    return IntPoly(tuple(quo)), IntPoly(tuple(rem[:dd]))


def poly_exact_div(num: IntPoly, den: IntPoly) -> IntPoly:
    quo, rem = poly_divmod(num, den)
    if not rem.is_zero():
        raise InexactDivisionError(f"({num}) is not divisible by ({den})")
    return quo


# Kronecker substitution: a polynomial becomes one big integer, evaluated at
# 2**bits, so a single big-integer product replaces the coefficient loop.

def _pack(coeffs, nbytes: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, nbytes: int, length: int) -> list[int]:
    # shift every digit into [0, 2**bits) so the byte split is exact
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    raw = (value + offset).to_bytes(nbytes * length, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, nbytes * length, nbytes)
    ]


def _bigmul(a: int, b: int) -> int:
    if _mpz is None:
        return a * b
    return int(_mpz(a) * _mpz(b))


def kron_mul(a: list[int], b: list[int]) -> list[int]:
    """Product of two coefficient lists through one big-integer multiplication."""
    if not a or not b:
        return []
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if not ma or not mb:
        return [0] * (len(a) + len(b) - 1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _bigmul(_pack(a, nbytes), _pack(b, nbytes))
    return _unpack(prod, nbytes, len(a) + len(b) - 1)


class _MonicReducer:
    """Remainders modulo a fixed monic polynomial via a precomputed reciprocal."""

    def __init__(self, mod: list[int]):
        if mod[-1] != 1:
            raise DomainError("reducer needs a monic modulus")
        self.mod = mod
        self.deg = len(mod) - 1
        # inverse of reversed(mod) modulo x^deg, by Newton iteration
        rev = mod[::-1]
        inv = [1]
        prec = 1
        while prec < self.deg:
            prec = min(2 * prec, self.deg)
            e = kron_mul(rev[:prec], inv)[:prec]
            e = [-c for c in e]
            e[0] += 2
            inv = kron_mul(inv, e)[:prec]
        self.inv = inv

    def reduce(self, a: list[int]) -> list[int]:
        D = self.deg
        if len(a) <= D:
            return a + [0] * (D - len(a))
        qlen = len(a) - D
        if qlen > D:
            raise DomainError("operand too long for one reduction step")
        rq = kron_mul(a[::-1][:qlen], self.inv[:qlen])[:qlen]
        q = rq[::-1]
        qm = kron_mul(q, self.mod)
        return [a[i] - qm[i] for i in range(D)]


def x_pow_mod(n: int, mod: IntPoly) -> IntPoly:
    """``x**n`` reduced modulo ``mod`` (leading coefficient +-1), square and multiply."""
    if mod.is_zero():
        raise DomainError("division by the zero polynomial")
    lead = mod.coeffs[-1]
    if lead not in (1, -1):
        raise DomainError(f"leading coefficient {lead} of the divisor is not a unit")
    if mod.degree == 0:
        return IntPoly()
    red = _MonicReducer([c * lead for c in mod.coeffs])
    D = red.deg
    acc = red.reduce([1])
    for bit in bin(n)[2:]:
        acc = red.reduce(kron_mul(acc, acc))
        if bit == "1":
            # multiply by x: shift, then cancel the x^D term
            top = acc[-1]
            acc = [0] + acc[:-1]
            if top:
                for i in range(D):
                    acc[i] -= top * red.mod[i]
    return IntPoly(tuple(acc))


def _mul_binomial(c: list[int], d: int) -> list[int]:
    # c * (x^d - 1)
    out = [0] * (len(c) + d)
    for i, v in enumerate(c):
        out[i + d] += v
        out[i] -= v
    return out


def _div_binomial(c: list[int], d: int) -> list[int] | None:
    # c / (x^d - 1), or None when the division leaves a remainder
    n = len(c) - 1
    if n < d:
        return None
    # c_j = q_{j-d} - q_j, solved upward for q_0..q_{n-d}
    q = [0] * (n - d + 1)
    for j in range(n - d + 1):
        q[j] = (q[j - d] if j >= d else 0) - c[j]
    for j in range(n - d + 1, n + 1):
        if c[j] != (q[j - d] if j >= d else 0):
            return None
    return q


def cyclotomic_exact(n: int) -> IntPoly:
    """
    The n-th cyclotomic polynomial, as the alternating product of ``x^d - 1``.

    >>> str(cyclotomic_exact(6))
    '1 - x + x^2'
    """
    divs = arith.divisors(n)
    coeffs = [1]
    pending: list[int] = []
    for d in divs:
        mu = arith.mobius(n // d)
        if mu == 1:
            coeffs = _mul_binomial(coeffs, d)
        elif mu == -1:
            pending.append(d)
        still = []
        for e in pending:
            q = _div_binomial(coeffs, e)
            if q is None:
                still.append(e)
            else:
                coeffs = q
        pending = still
    if pending:
        raise InexactDivisionError(f"cyclotomic({n}): divisions {pending} never became exact")
    return IntPoly(tuple(coeffs))


def cyclotomic_trunc(n: int, order: int) -> TruncSeries:
    """
    ``delta(n) * phi_n(x)`` modulo ``x**(order + 1)``; constant term always 1.

    Only divisors ``d <= order`` of ``n`` contribute, so ``n`` itself need not
    be small, only the cofactors ``n // d``.
    """
    arith._check_positive(n)
    out = TruncSeries.one(order)
    for d in range(1, order + 1):
        if n % d == 0:
            mu = arith.mobius(n // d)
            if mu:
                out = ts_mul(out, one_minus_pow(d, mu, order))
    return out
