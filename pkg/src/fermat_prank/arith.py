"""Exact integer and base-p digit utilities.

Everything here works on Python ints, so counts never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError

__all__ = [
    "DigitVec",
    "base_p_digits",
    "binom_mod_p",
    "digits_le",
    "is_prime",
    "lucas_nonzero",
    "mult_order",
    "require_prime",
    "two_adic_valuation",
]

_TRIAL_LIMIT = 1 << 20
# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Trial division up to 2**20, then Miller-Rabin with a fixed witness set.
    """
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    limit = min(math.isqrt(n), _TRIAL_LIMIT)
    f = 17
    while f <= limit:
        if n % f == 0:
            return False
        f += 2
    if limit == math.isqrt(n):
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ParameterError(f"p must be a prime, got {p!r}")
    return p


@dataclass(frozen=True)
class DigitVec:
    """Fixed-length little-endian base-p expansion.

    ``digits[r]`` is the coefficient of ``base**r``.
    """

    digits: tuple[int, ...]
    base: int

    def __post_init__(self):
        if not self.digits:
            raise ParameterError("a digit vector needs at least one digit")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ParameterError(f"digit {d} out of range for base {self.base}")

    @property
    def length(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def __iter__(self):
        return iter(self.digits)

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, r):
        return self.digits[r]


def _digits(x: int, p: int, h: int) -> list[int]:
    out = []
    for _ in range(h):
        x, r = divmod(x, p)
        out.append(r)
    return out


def base_p_digits(x: int, p: int, h: int) -> DigitVec:
    """Expand ``x`` in base ``p`` using exactly ``h`` digits (zero padded)."""
    require_prime(p)
    if h < 1:
        raise ParameterError(f"length must be >= 1, got {h}")
    if x < 0 or x >= p**h:
        raise ParameterError(f"{x} does not fit in {h} base-{p} digits")
    return DigitVec(tuple(_digits(x, p, h)), p)


def digits_le(a: int, b: int, p: int) -> bool:
    """True iff every base-p digit of ``a`` is <= the matching digit of ``b``."""
    while a:
        if b < a:
            return False
        a, ra = divmod(a, p)
        b, rb = divmod(b, p)
        if ra > rb:
            return False
    return True


def lucas_nonzero(a: int, b: int, p: int) -> bool:
    """True iff C(b, a) is not divisible by the prime ``p``."""
    if a < 0 or b < 0:
        raise ParameterError("binomial arguments must be non-negative")
    if a > b:
        return False
    return digits_le(a, b, p)


def binom_mod_p(b: int, a: int, p: int) -> int:
    """C(b, a) mod p as a product of single-digit binomials."""
    if a < 0 or b < 0:
        raise ParameterError("binomial arguments must be non-negative")
    if a > b:
        return 0
    res = 1
    while a or b:
        b, rb = divmod(b, p)
        a, ra = divmod(a, p)
        if ra > rb:
            return 0
        res = res * math.comb(rb, ra) % p
    return res % p


def mult_order(p: int, n: int) -> int:
    """Smallest h >= 1 with p**h == 1 (mod n)."""
    if n < 2:
        raise ParameterError(f"modulus must be >= 2, got {n}")
    if math.gcd(p, n) != 1:
        raise ParameterError(f"gcd({p}, {n}) != 1, no multiplicative order")
    x = p % n
    h = 1
    while x != 1:
        x = x * p % n
        h += 1
    return h


def two_adic_valuation(n: int) -> int | float:
    """Exponent of 2 in ``n``; ``math.inf`` for 0."""
    if n == 0:
        return math.inf
    n = abs(n)
    return (n & -n).bit_length() - 1
