"""Combinatorial p-rank of y^m = x^n + 1 and of the hyperelliptic y^2 = x^n + 1.

The central count is

    #T = #{(i, j) : 0 <= i*alpha <= j*beta <= q - 1, C(j*beta, i*alpha) != 0 mod p}

and the p-rank is ``#T - (m + n + gcd(m, n))``. Two independent counters are
provided: a direct double loop over Lucas tests and a digit DP that counts,
for each j, the multiples of alpha digitwise dominated by j*beta.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .arith import _digits, digits_le, lucas_nonzero, mult_order, require_prime
from .curves import FermatContext, basis, make_context
from .errors import InvariantViolation, LimitExceededError, ParameterError
from .report import PRankReport

__all__ = [
    "CountResult",
    "DELTA_ENUM_LIMIT",
    "count_T",
    "count_T_dp",
    "count_T_naive",
    "count_box_M",
    "count_congruence_box",
    "count_dominated_multiples",
    "delta_dp",
    "delta_enumerate",
    "delta_special_cases",
    "hyperelliptic_h",
    "prank_Cn_formula",
    "prank_curve_C",
    "prank_general",
    "prank_hyperelliptic",
    "prank_via_A",
]

DELTA_ENUM_LIMIT = 10**7
# Residue DP over alpha states is used only while alpha * h * (digit range) stays below this.
DP_WORK_LIMIT = 5 * 10**7

METHODS = ("naive", "digit_dp", "closed_form", "oracle")


@dataclass(frozen=True)
class CountResult:
    value: int
    method: str

    def __post_init__(self):
        if self.value < 0:
            raise InvariantViolation("negative count")


def count_T_naive(ctx: FermatContext) -> CountResult:
    a, b, p = ctx.alpha, ctx.beta, ctx.p
    total = 0
    for j in range(ctx.m + 1):
        jb = j * b
        for i in range(jb // a + 1):
            if lucas_nonzero(i * a, jb, p):
                total += 1
    return CountResult(total, "naive")


def count_dominated_multiples(J, alpha: int) -> int:
    """Count x dominated digitwise by ``J`` with ``alpha | x``.

    ``J`` is a :class:`~fermat_prank.arith.DigitVec` (little endian). The DP
    walks digits from the most significant end with state = prefix mod alpha.
    """
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    return _dominated_multiples(tuple(J.digits), J.base, alpha)


def _dominated_multiples(digits, p: int, alpha: int) -> int:
    if alpha == 1:
        return math.prod(d + 1 for d in digits)
    counts = [0] * alpha
    counts[0] = 1
    for top in reversed(digits):
        nxt = [0] * alpha
        for state, c in enumerate(counts):
            if not c:
                continue
            base = state * p
            for dig in range(top + 1):
                nxt[(base + dig) % alpha] += c
        counts = nxt
    return counts[0]


def count_T_dp(ctx: FermatContext) -> CountResult:
    if ctx.alpha > DP_WORK_LIMIT:
        raise LimitExceededError(f"digit DP over alpha={ctx.alpha} residues is too large")
    p, h, a, b = ctx.p, ctx.h, ctx.alpha, ctx.beta
    total = 0
    for j in range(ctx.m + 1):
        total += _dominated_multiples(_digits(j * b, p, h), p, a)
    return CountResult(total, "digit_dp")


def _naive_cost(ctx: FermatContext) -> int:
    # number of Lucas tests, each O(h)
    return sum(j * ctx.n // ctx.m + 1 for j in range(ctx.m + 1)) * ctx.h


def _dp_cost(ctx: FermatContext) -> int:
    return (ctx.m + 1) * ctx.h * ctx.p * ctx.alpha


def count_T(ctx: FermatContext, method: str = "auto") -> CountResult:
    """Count T by the requested path; ``auto`` picks the cheaper one."""
    if method == "auto":
        method = "digit_dp" if _dp_cost(ctx) < _naive_cost(ctx) else "naive"
    if method in ("dp", "digit_dp"):
        return count_T_dp(ctx)
    if method == "naive":
        return count_T_naive(ctx)
    raise ParameterError(f"unknown counting method {method!r}")


def _rational_report(genus: int, method: str) -> PRankReport:
    return PRankReport(0, genus, method, None, ("rational curve",))


def prank_general(ctx: FermatContext, method: str = "auto") -> PRankReport:
    """p-rank as #T - (m + n + d)."""
    if ctx.genus == 0:
        return _rational_report(0, method)
    res = count_T(ctx, method)
    gamma = res.value - (ctx.m + ctx.n + ctx.d)
    if not 0 <= gamma <= ctx.genus:
        raise InvariantViolation(
            f"p-rank {gamma} outside [0, {ctx.genus}] for p={ctx.p}, m={ctx.m}, n={ctx.n}"
        )
    return PRankReport(gamma, ctx.genus, res.method)


def prank_via_A(ctx: FermatContext) -> PRankReport:
    """p-rank as the number of basis indices whose h-step eigenvalue survives."""
    p, a, b = ctx.p, ctx.alpha, ctx.beta
    gamma = sum(1 for idx in basis(ctx) if lucas_nonzero(idx.i * a, idx.j * b, p))
    return PRankReport(gamma, ctx.genus, "via_A")


# -- y^2 = x^n + 1 -----------------------------------------------------------


def _check_hyperelliptic(p: int, n: int) -> None:
    require_prime(p)
    if p == 2:
        raise ParameterError("y^2 = x^n + 1 needs odd p")
    if n < 1:
        raise ParameterError("n must be >= 1")
    if n % p == 0:
        raise ParameterError("characteristic divides exponent")


def hyperelliptic_h(p: int, n: int) -> int:
    """Order of p modulo n (1 when n <= 2, where every odd p works)."""
    return 1 if n <= 2 else mult_order(p, n)


def _hyper_genus(n: int) -> int:
    return (n - 1) // 2


def prank_hyperelliptic(p: int, n: int) -> PRankReport:
    """p-rank of y^2 = x^n + 1 from the set S of surviving i."""
    _check_hyperelliptic(p, n)
    g = _hyper_genus(n)
    if g == 0:
        return _rational_report(0, "hyperelliptic")
    h = hyperelliptic_h(p, n)
    q = p**h
    alpha = (q - 1) // n
    half = (q - 1) // 2
    size_S = sum(1 for i in range(n // 2 + 1) if digits_le(i * alpha, half, p))
    gamma = size_S - (1 if n % 2 else 2)
    return PRankReport(gamma, g, "hyperelliptic")


def count_box_M(p: int, h: int, alpha: int) -> int:
    """Count u with base-p digits in [0, (p-1)/2] (h digits) and alpha | u."""
    require_prime(p)
    if p == 2:
        raise ParameterError("the half-digit box needs odd p")
    if alpha < 1 or (p**h - 1) % alpha:
        raise ParameterError(f"alpha={alpha} must divide p^h - 1")
    half = (p - 1) // 2
    top = half * ((p**h - 1) // (p - 1))
    if alpha * (half + 1) <= top // alpha + 1:
        return _dominated_multiples([half] * h, p, alpha)
    return _multiples_walk(p, top, alpha)


# -- congruence box ----------------------------------------------------------


def _check_box(alpha: int, s: int, coeffs, b: int) -> None:
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    if not 0 <= s < alpha:
        raise ParameterError(f"s={s} must lie in [0, alpha-1]")
    if not 0 <= b < alpha:
        raise ParameterError(f"b={b} must lie in [0, alpha-1]")
    if not coeffs:
        raise ParameterError("need at least one coefficient")
    for c in coeffs:
        if math.gcd(c, alpha) != 1:
            raise ParameterError(f"coefficient {c} is not invertible mod {alpha}")


def delta_special_cases(alpha: int, s: int, coeffs, b: int) -> dict[str, int]:
    """Closed forms for the count over [0, s]^h, keyed by case label.

    Every case whose hypothesis holds is returned, so overlapping cases can be
    compared against each other.
    """
    h = len(coeffs)
    out = {}
    if s == 0:
        out["i"] = 1 if b == 0 else 0
    if s == alpha - 1:
        out["ii"] = alpha ** (h - 1)
    if s == alpha - 2:
        sign = (-1) ** h
        num = (alpha - 1) ** h - sign
        if num % alpha:
            raise InvariantViolation("non-integral closed form in case (iii)")
        val = num // alpha
        if (sum(coeffs) + b) % alpha == 0:
            val += sign
        out["iii"] = val
    if alpha % 2 == 0 and s == alpha // 2 and b == 0 and h % 2 == 1:
        num = 2 * ((alpha // 2 + 1) ** h - 1) + alpha
        if num % (2 * alpha):
            raise InvariantViolation("non-integral closed form in case (iv)")
        out["iv"] = num // (2 * alpha)
    return out


def delta_enumerate(alpha: int, s: int, coeffs, b: int) -> int:
    """Count solutions in [0, s]^h by listing every tuple."""
    if (s + 1) ** len(coeffs) > DELTA_ENUM_LIMIT:
        raise LimitExceededError(
            f"delta too large, use DP: (s+1)^h = {(s + 1) ** len(coeffs)} > {DELTA_ENUM_LIMIT}"
        )
    return sum(
        1
        for xs in itertools.product(range(s + 1), repeat=len(coeffs))
        if (sum(c * x for c, x in zip(coeffs, xs)) - b) % alpha == 0
    )


def delta_dp(alpha: int, s: int, coeffs, b: int) -> int:
    """Count solutions in [0, s]^h by a residue DP (state = partial sum mod alpha)."""
    if alpha * len(coeffs) * (s + 1) > DP_WORK_LIMIT:
        raise LimitExceededError(f"residue DP over alpha={alpha} states is too large")
    counts = [0] * alpha
    counts[0] = 1
    for c in coeffs:
        nxt = [0] * alpha
        for state, k in enumerate(counts):
            if k:
                for x in range(s + 1):
                    nxt[(state + c * x) % alpha] += k
        counts = nxt
    return counts[b % alpha]


def box_delta(alpha: int, s: int, coeffs, b: int) -> int:
    """delta: closed special case when one applies, else enumeration."""
    cases = delta_special_cases(alpha, s, coeffs, b)
    if cases:
        return next(iter(cases.values()))
    return delta_enumerate(alpha, s, coeffs, b)


def count_congruence_box(alpha: int, t: int, s: int, coeffs, b: int) -> int:
    """Solutions of sum(coeffs[i] * X_i) == b (mod alpha) in [0, t*alpha + s]^h."""
    _check_box(alpha, s, coeffs, b)
    if t < 0:
        raise ParameterError("t must be >= 0")
    h = len(coeffs)
    num = (t * alpha + s + 1) ** h - (s + 1) ** h
    if num % alpha:
        raise InvariantViolation("non-integral leading term in the box count")
    return num // alpha + box_delta(alpha, s, coeffs, b)


# -- closed formula for y^2 = x^n + 1 ---------------------------------------


def _multiples_walk(p: int, top: int, alpha: int) -> int:
    """Multiples of alpha in [0, top] whose digits are dominated by those of top."""
    return sum(1 for k in range(top // alpha + 1) if digits_le(k * alpha, top, p))


def _hyper_delta(p: int, h: int, alpha: int, s: int) -> int:
    """Solutions of X_1 + p X_2 + ... + p^(h-1) X_h == 0 (mod alpha) in [0, s]^h."""
    coeffs = [pow(p, i, alpha) if alpha > 1 else 1 for i in range(h)]
    cases = delta_special_cases(alpha, s, coeffs, 0)
    if cases:
        return next(iter(cases.values()))
    # s < p, so each tuple is the base-p number sum x_i p^(i-1)
    top = s * ((p**h - 1) // (p - 1))
    costs = {
        "enum": (s + 1) ** h,
        "dp": alpha * h * (s + 1),
        "walk": (top // alpha + 1) * h,
    }
    pick = min(costs, key=costs.get)
    if pick == "enum":
        return delta_enumerate(alpha, s, coeffs, 0)
    if pick == "dp":
        return delta_dp(alpha, s, coeffs, 0)
    return _multiples_walk(p, top, alpha)


def cn_delta_n(p: int, n: int) -> tuple[int, int, int, int]:
    """Return (delta_n, h, alpha, delta) for y^2 = x^n + 1, n >= 3."""
    h = hyperelliptic_h(p, n)
    q = p**h
    alpha = (q - 1) // n
    s = ((p - 1) // 2) % alpha
    delta = _hyper_delta(p, h, alpha, s)
    lost = 1 if n % 2 else 2
    return (s + 1) ** h - alpha * (delta - lost), h, alpha, delta


def prank_Cn_formula(p: int, n: int) -> tuple[int, int | None]:
    """p-rank of y^2 = x^n + 1 as (n/(q-1)) * (((p+1)/2)^h - delta_n).

    Returns ``(gamma, delta_n)``; ``delta_n`` is None for genus-0 curves.
    """
    _check_hyperelliptic(p, n)
    if _hyper_genus(n) == 0:
        return 0, None
    delta_n, h, alpha, _ = cn_delta_n(p, n)
    num = ((p + 1) // 2) ** h - delta_n
    if num % alpha:
        raise InvariantViolation(f"non-integral p-rank formula for p={p}, n={n}")
    return num // alpha, delta_n


def prank_curve_C(p: int, n: int, method: str = "auto") -> int:
    """Counter p-rank of y^2 = x^n + 1 for any n >= 1 (0 when rational)."""
    if n <= 2:
        _check_hyperelliptic(p, n)
        return 0
    return prank_general(make_context(p, 2, n), method).gamma
