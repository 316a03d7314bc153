"""Curve parameters, derived invariants and supersingularity.

The Fermat-type curve ``y^m = x^n + 1`` over a field of characteristic ``p``
is described by a :class:`FermatContext`; the other curve kinds the CLI
understands are described by :class:`CurveSpec`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import mult_order, require_prime, two_adic_valuation
from .errors import InvariantViolation, ParameterError

__all__ = [
    "BasisIndex",
    "CurveSpec",
    "FermatContext",
    "basis",
    "fermat_genus",
    "gcd_power_table",
    "is_supersingular",
    "make_context",
    "supersingular_special",
]

CURVE_KINDS = ("fermat", "dn", "dgz", "bks")


@dataclass(frozen=True)
class CurveSpec:
    """A user-facing curve request.

    ``kind`` is ``fermat`` (uses m, n), ``dn`` for y^2 = x(x^n + 1) (uses n),
    or ``dgz``/``bks`` (use h).
    """

    kind: str
    p: int
    m: int | None = None
    n: int | None = None
    h: int | None = None

    def __post_init__(self):
        require_prime(self.p)
        if self.kind not in CURVE_KINDS:
            raise ParameterError(f"unknown curve kind {self.kind!r}")
        if self.kind == "fermat":
            if self.m is None or self.n is None:
                raise ParameterError("fermat curves need m and n")
            _check_fermat(self.p, self.m, self.n)
        elif self.kind == "dn":
            if self.n is None or self.n < 1:
                raise ParameterError("dn curves need n >= 1")
            if self.p == 2:
                raise ParameterError("y^2 = x(x^n+1) needs odd p")
            if self.n % self.p == 0:
                raise ParameterError("characteristic divides exponent")
        else:
            if self.h is None or self.h < 1:
                raise ParameterError(f"{self.kind} curves need h >= 1")
            if self.kind == "bks" and self.p == 2:
                raise ParameterError("the bks curve needs odd p")


def _check_fermat(p: int, m: int, n: int) -> None:
    if m < 2 or n < 2:
        raise ParameterError(f"exponents must be >= 2, got m={m}, n={n}")
    if (m * n) % p == 0:
        raise ParameterError("characteristic divides exponent")


def fermat_genus(m: int, n: int) -> int:
    twice = (m - 1) * (n - 1) + 1 - math.gcd(m, n)
    if twice % 2:
        raise InvariantViolation(f"odd numerator in genus for m={m}, n={n}")
    return twice // 2


@dataclass(frozen=True)
class FermatContext:
    p: int
    m: int
    n: int
    d: int
    h: int
    q: int
    alpha: int
    beta: int
    genus: int

    def __post_init__(self):
        if self.alpha * self.n != self.q - 1 or self.beta * self.m != self.q - 1:
            raise InvariantViolation("alpha*n = beta*m = q-1 violated")


def make_context(p: int, m: int, n: int, h: int | None = None) -> FermatContext:
    """Build the working state for ``y^m = x^n + 1`` in characteristic ``p``.

    ``h`` defaults to the lcm of the orders of p modulo m and n. An explicit
    ``h`` must be a multiple of that minimum.
    """
    require_prime(p)
    _check_fermat(p, m, n)
    h_min = math.lcm(mult_order(p, m), mult_order(p, n))
    if h is None:
        h = h_min
    elif h < 1 or h % h_min:
        raise ParameterError(f"h={h} is not a multiple of the minimal exponent {h_min}")
    q = p**h
    return FermatContext(
        p=p,
        m=m,
        n=n,
        d=math.gcd(m, n),
        h=h,
        q=q,
        alpha=(q - 1) // n,
        beta=(q - 1) // m,
        genus=fermat_genus(m, n),
    )


@dataclass(frozen=True, order=True)
class BasisIndex:
    """Index of the holomorphic differential x^(i-1) dx / y^j."""

    i: int
    j: int


def in_basis(m: int, n: int, i: int, j: int) -> bool:
    return m <= i * m < j * n <= n * (m - 1)


def basis(ctx: FermatContext) -> list[BasisIndex]:
    """All (i, j) with m <= i*m < j*n <= n*(m-1), ordered by (j, i)."""
    m, n = ctx.m, ctx.n
    out = []
    for j in range(1, m):
        # i*m < j*n  <=>  i <= (j*n - 1) // m
        for i in range(1, (j * n - 1) // m + 1):
            out.append(BasisIndex(i, j))
    if len(out) != ctx.genus:
        raise InvariantViolation(f"basis has {len(out)} elements, genus is {ctx.genus}")
    return out


def is_supersingular(ctx: FermatContext) -> tuple[bool, int | None]:
    """Decide supersingularity: some h' with m | p^h' + 1 and n | p^h' + 1.

    p^h' mod lcm(m, n) is periodic with period ord_p(lcm(m, n)), so checking
    h' in [1, that order] is exhaustive. Returns the smallest witness.
    """
    if ctx.genus == 0:
        raise ParameterError("invariant undefined for rational curve")
    L = math.lcm(ctx.m, ctx.n)
    period = mult_order(ctx.p, L)
    x = 1
    for hp in range(1, period + 1):
        x = x * ctx.p % L
        if (x + 1) % L == 0:
            return True, hp
    return False, None


def _log_p_exact(p: int, x: int) -> int | None:
    """k >= 1 with p**k == x, else None."""
    k, v = 0, 1
    while v < x:
        v *= p
        k += 1
    return k if v == x and k >= 1 else None


def supersingular_special(ctx: FermatContext) -> bool | None:
    """Shortcut verdicts for y^(p^a+1) = x^(p^b+1) + 1 and y^(p^a±1) = x^(p^b-1) + 1.

    The first form is supersingular iff v2(a) == v2(b). For the second form
    only y^(3^a+1) = x^2 + 1 is supersingular; that rule is applied for odd p
    only, because at p = 2 it fails (y^3 = x^3 + 1 is supersingular).
    Returns None when neither form matches.
    """
    p, m, n = ctx.p, ctx.m, ctx.n
    a = _log_p_exact(p, m - 1)
    b = _log_p_exact(p, n - 1)
    if a is not None and b is not None:
        return two_adic_valuation(a) == two_adic_valuation(b)
    if p == 2 or ctx.genus == 0:
        return None
    b = _log_p_exact(p, n + 1)
    a_plus = _log_p_exact(p, m - 1)
    a_minus = _log_p_exact(p, m + 1)
    if b is None or (a_plus is None and a_minus is None):
        return None
    return p == 3 and n == 2 and a_plus is not None


def gcd_power_table(p: int, a: int, b: int) -> int:
    """gcd(p^a + 1, p^b - 1) from the parity of b / gcd(a, b)."""
    d = math.gcd(a, b)
    if (b // d) % 2 == 0:
        return p**d + 1
    return 1 if p == 2 else 2
