"""Four auxiliary counting sets: closed forms and brute-force counts.

A1  (a, b, c, d): a, b in [1, p]; 1 <= c, d <= min(a, b); a + b <= c + d + p - 1
A2  (a_0..a_{m-1}, b_0..b_{n-1}): a_r in [0, b-1]; b_s <= min_r a_r
A3  same shape as A2 but b_s <= min_r min(a_r, b-1-a_r)
A4  (a_0..a_{m-1}, b_0..b_{2n-1}): b_s <= min_r a_r for s < n,
    b_s <= min_r (b-1-a_r) for s >= n
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import require_prime
from .errors import InvariantViolation, LimitExceededError, ParameterError

__all__ = ["ENUM_CAP", "SetParams", "closed_count", "enumerate_count"]

ENUM_CAP = 10**8


@dataclass(frozen=True)
class SetParams:
    which: str
    b: int = 0  # the prime p for A1
    m: int = 1
    n: int = 1

    def __post_init__(self):
        if self.which not in ("A1", "A2", "A3", "A4"):
            raise ParameterError(f"unknown set {self.which!r}")
        if self.which == "A1":
            require_prime(self.b)
            return
        if self.b < (2 if self.which == "A3" else 1):
            raise ParameterError(f"{self.which} needs a larger b, got {self.b}")
        if self.m < 1 or self.n < 1:
            raise ParameterError("m and n must be >= 1")


def _exact(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InvariantViolation(f"{what} is not an integer: {x}")
    return x.numerator


def closed_count(params: SetParams) -> int:
    b, m, n = params.b, params.m, params.n
    if params.which == "A1":
        p = b
        return _exact(Fraction(p * (p + 1) * (p * p + p + 2), 8), "A1 count")
    if params.which == "A2":
        return sum(((i + 1) ** m - i**m) * (b - i) ** n for i in range(b))
    if params.which == "A3":
        if b % 2:
            inner = (b + 1) ** n + sum(
                ((2 * i + 1) ** m - (2 * i - 1) ** m) * (b - 2 * i + 1) ** n
                for i in range(1, (b - 1) // 2 + 1)
            )
            return _exact(Fraction(inner, 2**n), "A3 odd-b count")
        inner = sum((i**m - (i - 1) ** m) * (b - 2 * i + 2) ** n for i in range(1, b // 2 + 1))
        return _exact(Fraction(2) ** (m - n) * inner, "A3 even-b count")
    diag = sum(((b - i) * (i + 1)) ** n for i in range(b))
    off = sum(
        ((j + 1) ** m - 2 * j**m + (j - 1) ** m) * ((b - i) * (i - j + 1)) ** n
        for i in range(1, b)
        for j in range(1, i + 1)
    )
    return diag + off


def _enum_size(params: SetParams, exhaustive: bool) -> int:
    """Number of candidates the enumeration will test."""
    b, m, n = params.b, params.m, params.n
    if params.which == "A1":
        return b**4
    k = 2 * n if params.which == "A4" else n
    return b ** (m + k) if exhaustive else b**m * k * b


def enumerate_count(params: SetParams, exhaustive: bool = False) -> int:
    """Cardinality by testing membership of candidate tuples.

    For A2-A4 the b-coordinates are constrained independently once the
    a-tuple is fixed, so by default each b-coordinate's admissible values are
    counted separately and multiplied. ``exhaustive=True`` walks every full
    tuple instead.
    """
    size = _enum_size(params, exhaustive)
    if size > ENUM_CAP:
        raise LimitExceededError(f"{size} candidates exceeds the cap {ENUM_CAP}")
    b, m, n = params.b, params.m, params.n
    if params.which == "A1":
        p = b
        total = 0
        for a1, b1, c, d in itertools.product(range(1, p + 1), repeat=4):
            if max(c, d) <= min(a1, b1) and a1 + b1 <= c + d + p - 1:
                total += 1
        return total

    def bounds(avec):
        lo = min(avec)
        hi = min(b - 1 - a for a in avec)
        if params.which == "A2":
            return [lo] * n
        if params.which == "A3":
            return [min(lo, hi)] * n
        return [lo] * n + [hi] * n

    total = 0
    for avec in itertools.product(range(b), repeat=m):
        caps = bounds(avec)
        if exhaustive:
            total += sum(
                1
                for bvec in itertools.product(range(b), repeat=len(caps))
                if all(x <= c for x, c in zip(bvec, caps))
            )
        else:
            total += math.prod(sum(1 for x in range(b) if x <= c) for c in caps)
    return total
