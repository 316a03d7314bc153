"""Closed-form p-rank formulas, one entry per family.

Every family has an explicit applicability check; :func:`closed_form` never
guesses which family a curve belongs to. :func:`match_families` lists the
families (with parameters) that apply to a given ``y^m = x^n + 1``.

Family ids and parameter names::

    T41_general      m, n, form in {general, n=p+1, m=p-1}   m | p-1, n | p+1
    T42_m_qminus1    m, h, form in {digits, power}           y^m = x^(p^h-1) + 1
    T43_p2p1         form in {fermat, p3m1}                  m = p^2+p+1
    T44_half         h, form in {fermat, qminus1}            m = (p^h-1)/2
    T46_pm1_pn1      u, v                                    y^(p^u-1) = x^(p^v-1) + 1
    C47_char2_zero   m, n                                    p = 2, coprime orders
    T48_ss_zero      m, n                                    m | p^u+1, n | p^v+1
    T49_even         u, v                                    y^(p^u+1) = x^(p^v-1) + 1
    T49_odd          u, v
    C410_char2_zero  m, n, u, v                              p = 2, m | 2^u+1, n | 2^v-1
    C52_i .. C52_vi  r                                       y^2 = x^n + 1, n from r
    T54_delta_table  n, item in {i, ii, iii, iv, v}
    D_odd            n                                       y^2 = x(x^n + 1), n odd
    D_even           n, item in {None, i, ii, iii}
    D_phplus1        h                                       n = p^h + 1
    C62_equality     h, alpha                                gamma(C_2N) from C_N
    DGZ              h
    BKS              h
    S7_final         m, n                                    y^(m(p+1)) = x^(n(p+1)) + 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import _digits, mult_order, require_prime
from .counting import cn_delta_n, hyperelliptic_h, prank_Cn_formula, prank_curve_C
from .curves import CurveSpec, fermat_genus
from .errors import InvariantViolation, LimitExceededError, NotApplicableError, ParameterError
from .report import PRankReport

__all__ = [
    "FAMILY_IDS",
    "FERMAT_FAMILY_IDS",
    "FamilyId",
    "closed_form",
    "family_curve",
    "kani_rosen_identities",
    "match_families",
    "prank_Dn",
]

KANI_ROSEN_MAX_N = 200_000


@dataclass(frozen=True)
class FamilyId:
    id: str
    params: dict = field(default_factory=dict)

    def __str__(self):
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.id}({inner})"


def _need(cond: bool, what: str) -> None:
    if not cond:
        raise NotApplicableError(f"family not applicable: {what}")


def _exact(x, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise InvariantViolation(f"{what} is not an integer: {x}")
    return x.numerator


def _log_p(p: int, x: int) -> int | None:
    k, v = 0, 1
    while v < x:
        v *= p
        k += 1
    return k if v == x else None


def _odd_p(p: int) -> None:
    _need(p != 2, "p must be odd")


# -- y^m = x^n + 1 families ---------------------------------------------------


def _t41(p, m, n, form="general"):
    _need(m >= 2 and (p - 1) % m == 0, f"m={m} must divide p-1={p - 1}")
    _need(n >= 2 and (p + 1) % n == 0, f"n={n} must divide p+1={p + 1}")
    m0, n0 = (p - 1) // m, (p + 1) // n
    if form == "general":
        lo = -(-m // 2)
        s = sum((j * m0 + 1) // n0 for j in range(lo, m + 1))
        gamma = 2 * s - (m - lo + 2) * (n - 1) + 1 - math.gcd(m, n)
    elif form == "n=p+1":
        _need(n == p + 1, "n must equal p+1")
        if m % 2:
            gamma = _exact(Fraction(m0 * (m - 1) ** 2, 4) + Fraction(m - 1, 2), "T41 m odd")
        else:
            gamma = _exact(Fraction(m0 * (m * m - 2 * m), 4) + Fraction(m - 2, 2), "T41 m even")
    elif form == "m=p-1":
        _need(m == p - 1, "m must equal p-1")
        if n % 2:
            gamma = _exact(Fraction(n0 * (n * n - 1), 4) - n + 1, "T41 n odd")
        else:
            gamma = _exact(Fraction(n0 * n * n, 4) - n, "T41 n even")
    else:
        raise ParameterError(f"unknown T41 form {form!r}")
    return gamma, CurveSpec("fermat", p, m=m, n=n)


def _t42(p, m, h, form="digits"):
    _need(h >= 1 and p**h - 1 >= 2, "p^h - 1 must be >= 2")
    q1 = p**h - 1
    _need(m >= 2 and q1 % m == 0, f"m={m} must divide p^h-1={q1}")
    if form == "digits":
        beta = q1 // m
        total = sum(math.prod(a + 1 for a in _digits(j * beta, p, h)) for j in range(1, m))
    elif form == "power":
        _need((p - 1) % m == 0, "power form needs m | p-1")
        total = sum((j * (p - 1) // m + 1) ** h for j in range(1, m))
    else:
        raise ParameterError(f"unknown T42 form {form!r}")
    return total - 2 * (m - 1), CurveSpec("fermat", p, m=m, n=q1)


def _t43(p, form="fermat"):
    m = p * p + p + 1
    if form == "fermat":
        return _exact(Fraction(p * (p + 1) * (p * p + p + 2), 8), "T43"), CurveSpec(
            "fermat", p, m=m, n=m
        )
    if form == "p3m1":
        val = _exact(Fraction(p * (p + 1) * (p**3 + 2 * p * p + 3 * p - 14), 8), "T43")
        return val, CurveSpec("fermat", p, m=m, n=p**3 - 1)
    raise ParameterError(f"unknown T43 form {form!r}")


def _t44(p, h, form="fermat"):
    _odd_p(p)
    q = p**h
    _need(h >= 1 and (q - 1) // 2 >= 2, "(p^h-1)/2 must be >= 2")
    m = (q - 1) // 2
    if form == "fermat":
        val = Fraction((p + 1) ** h * (q + 3), 2 ** (h + 2)) - Fraction(3 * (q - 1), 2)
        return _exact(val, "T44"), CurveSpec("fermat", p, m=m, n=m)
    if form == "qminus1":
        val = Fraction((p + 1) ** h * (q + 1), 2 ** (h + 1)) - 2 * (q - 1)
        return _exact(val, "T44"), CurveSpec("fermat", p, m=m, n=q - 1)
    raise ParameterError(f"unknown T44 form {form!r}")


def _t46(p, u, v):
    _need(u >= 1 and v >= 1 and p**u - 1 >= 2 and p**v - 1 >= 2, "p^u-1, p^v-1 must be >= 2")
    d = math.gcd(u, v)
    a, b = u // d, v // d
    inner = sum(((i + 1) ** a - i**a) * (p - i) ** b for i in range(p))
    gamma = inner**d - (p**u + p**v + p**d - 3)
    return gamma, CurveSpec("fermat", p, m=p**u - 1, n=p**v - 1)


def _zero_curve(p, m, n):
    _need(m >= 2 and n >= 2, "exponents must be >= 2")
    _need((m * n) % p != 0, "p must not divide m*n")
    return CurveSpec("fermat", p, m=m, n=n)


def _c47(p, m, n):
    _need(p == 2, "p must be 2")
    _need(m % 2 == 1 and n % 2 == 1, "m and n must be odd")
    spec = _zero_curve(p, m, n)
    _need(math.gcd(mult_order(2, m), mult_order(2, n)) == 1, "orders of 2 mod m, n not coprime")
    return 0, spec


def _power_plus_one_exponent(p: int, m: int) -> int | None:
    """Least u >= 0 with m | p^u + 1, or None."""
    if m <= 2:
        return 0 if 2 % m == 0 else None
    if math.gcd(p, m) != 1:
        return None
    x = 1
    for u in range(mult_order(p, m)):
        if (x + 1) % m == 0:
            return u
        x = x * p % m
    return None


def _t48(p, m, n):
    spec = _zero_curve(p, m, n)
    _need(_power_plus_one_exponent(p, m) is not None, f"no u with {m} | p^u + 1")
    _need(_power_plus_one_exponent(p, n) is not None, f"no v with {n} | p^v + 1")
    return 0, spec


def _t49_parts(p, u, v):
    _need(u >= 1 and v >= 1 and p**v - 1 >= 2, "need u, v >= 1 and p^v - 1 >= 2")
    d = math.gcd(u, v)
    return d, CurveSpec("fermat", p, m=p**u + 1, n=p**v - 1)


def _t49_even(p, u, v):
    d, spec = _t49_parts(p, u, v)
    _need((v // d) % 2 == 0, "v/gcd(u,v) must be even")
    a, k = u // d, v // (2 * d)
    inner = sum(((p - i) * (i + 1)) ** k for i in range(p))
    inner += sum(
        ((j + 1) ** a - 2 * j**a + (j - 1) ** a) * ((p - i) * (i - j + 1)) ** k
        for i in range(1, p)
        for j in range(1, i + 1)
    )
    return inner**d - (p**u + p**d), spec


def _t49_odd(p, u, v):
    d, spec = _t49_parts(p, u, v)
    _need((v // d) % 2 == 1, "v/gcd(u,v) must be odd")
    if p == 2:
        return 0, spec
    a, b = u // d, v // d
    inner = (p + 1) ** b + sum(
        ((2 * i + 1) ** a - (2 * i - 1) ** a) * (p - 2 * i + 1) ** b
        for i in range(1, (p - 1) // 2 + 1)
    )
    return _exact(Fraction(inner**d, 2**v) - (p**u + 1), "T49 odd"), spec


def _c410_witness(m: int, n: int) -> tuple[int, int] | None:
    om, on = mult_order(2, m) if m > 1 else 1, mult_order(2, n) if n > 1 else 1
    bound = 4 * om * on
    us = [u for u in range(1, bound + 1) if (pow(2, u, m) + 1) % m == 0]
    for v in range(on, bound + 1, on):
        for u in us:
            if (v // math.gcd(u, v)) % 2 == 1:
                return u, v
    return None


def _c410(p, m, n, u=None, v=None):
    _need(p == 2, "p must be 2")
    spec = _zero_curve(p, m, n)
    if u is None or v is None:
        w = _c410_witness(m, n)
        _need(w is not None, "no (u, v) with m | 2^u+1, n | 2^v-1, v/gcd(u,v) odd")
        u, v = w
    _need(u >= 1 and v >= 1, "u, v must be >= 1")
    _need((2**u + 1) % m == 0, f"m={m} must divide 2^u+1")
    _need((2**v - 1) % n == 0, f"n={n} must divide 2^v-1")
    _need((v // math.gcd(u, v)) % 2 == 1, "v/gcd(u,v) must be odd")
    return 0, spec


def _c52(item):
    def fam(p, r):
        _odd_p(p)
        _need(r >= 1, "r must be >= 1")
        pr = p**r
        half = (p + 1) // 2
        if item == "i":
            n, g = pr - 1, half**r - 2
        elif item == "ii":
            n, g = 2 * (pr + 1), half**r
        elif item == "iii":
            n, g = 2 * (pr - 1), half**r - 2
        elif item == "iv":
            n, g = pr * pr + pr + 1, _exact(Fraction((p + 3) * (p + 1), 8), "C52") ** r
        elif item == "v":
            n, g = 2 * (pr * pr + pr + 1), 2 * _exact(Fraction((p + 3) * (p + 1), 8), "C52") ** r
        else:
            base = _exact(Fraction((p * p + 2 * p + 3) * (p + 1), 12), "C52")
            n, g = pr**3 - pr * pr + pr - 1, base**r - 2
        _need(n >= 2, "n must be >= 2")
        return g, CurveSpec("fermat", p, m=2, n=n)

    return fam


def _hyper_setup(p, n):
    _odd_p(p)
    _need(n >= 1 and n % p != 0, "n must be >= 1 and coprime to p")
    h = hyperelliptic_h(p, n)
    q = p**h
    return h, q, (q - 1) // n


T54_ITEMS = ("i", "ii", "iii", "iv", "v")


def _t54_items(p, n):
    """Map item -> delta_n for every item whose hypothesis holds."""
    h, q, alpha = _hyper_setup(p, n)
    sign = (-1) ** h
    out = {}
    if ((p - 1) // 2) % alpha == 0:
        if n % 2:
            raise InvariantViolation(f"alpha | (p-1)/2 but n={n} is odd")
        out["i"] = alpha + 1
    if ((p + 1) // 2) % alpha == 0:
        out["ii"] = alpha if n % 2 else 2 * alpha
    if ((p + 3) // 2) % alpha == 0:
        if n % (p - 1):
            out["iii"] = (alpha if n % 2 else 2 * alpha) + sign
        else:
            if n % 2:
                raise InvariantViolation(f"(p-1) | n but n={n} is odd")
            out["iv"] = 2 * alpha + sign * (1 - alpha)
    if n % 2 == 1 and (p - 1) % alpha == 0:
        if h % 2 == 0:
            raise InvariantViolation(f"n={n} odd, alpha | p-1, but h={h} is even")
        out["v"] = _exact(Fraction(alpha + 2, 2), "T54 item v")
    return out


def _t54(p, n, item=None):
    _need(n >= 3, "n must be >= 3")
    h, q, alpha = _hyper_setup(p, n)
    items = _t54_items(p, n)
    if item is None:
        _need(bool(items), "no delta_n table item applies")
        item = next(iter(items))
    if item not in T54_ITEMS:
        raise ParameterError(f"unknown T54 item {item!r}")
    _need(item in items, f"delta_n item ({item}) hypothesis fails")
    gamma = _exact(Fraction(((p + 1) // 2) ** h - items[item], alpha), "T54 gamma")
    return gamma, CurveSpec("fermat", p, m=2, n=n)


def _s7(p, m, n):
    _need(m >= 1 and (p - 1) % m == 0, f"m={m} must divide p-1")
    _need(n >= 1 and (p - 1) % n == 0, f"n={n} must divide p-1")
    d = math.gcd(m, n)
    val = Fraction(
        m * n * p * p + 2 * (2 * m * n - m - n - d) * p + 3 * m * n - 2 * m - 2 * n - 2 * d + 4, 4
    ) - Fraction((m * m + n * n + d * d) * (p - 1) ** 2, 12 * m * n)
    return _exact(val, "S7 formula"), CurveSpec("fermat", p, m=m * (p + 1), n=n * (p + 1))


# -- y^2 = x(x^n + 1) and the p-power covers ----------------------------------


def _d_odd(p, n):
    _need(n % 2 == 1, "n must be odd")
    _hyper_setup(p, n)
    return prank_Cn_formula(p, n)[0], CurveSpec("dn", p, n=n)


D_EVEN_ITEMS = ("i", "ii", "iii")


def _d_even_items(p, n, h, alpha):
    sign = (-1) ** h
    out = {}
    if ((p - 1) // 2) % alpha == 0:
        out["i"] = 1
    if ((p + 1) // 2) % alpha == 0:
        out["ii"] = 0
    if ((p + 3) // 2) % alpha == 0:
        special = (2 * n) % (p - 1) == 0 and n % (p - 1) != 0
        out["iii"] = sign * (1 - alpha) if special else sign
    return out


def _d_even(p, n, item=None):
    _need(n % 2 == 0, "n must be even")
    h, q, alpha = _hyper_setup(p, n)
    spec = CurveSpec("dn", p, n=n)
    if alpha % 2:
        _need(item is None, "table items need even alpha")
        return 0, spec
    if item is None:
        dn2 = cn_delta_n(p, 2 * n)
        if dn2[1] != h:
            raise InvariantViolation("order of p mod 2n differs from mod n with even alpha")
        tilde = 2 * dn2[0] - cn_delta_n(p, n)[0]
    else:
        items = _d_even_items(p, n, h, alpha)
        if item not in D_EVEN_ITEMS:
            raise ParameterError(f"unknown D_even item {item!r}")
        _need(item in items, f"delta~_n item ({item}) hypothesis fails")
        tilde = items[item]
    return _exact(Fraction(((p + 1) // 2) ** h - tilde, alpha), "D_even gamma"), spec


def _d_phplus1(p, h):
    _odd_p(p)
    _need(h >= 1, "h must be >= 1")
    return ((p + 1) // 2) ** h, CurveSpec("dn", p, n=p**h + 1)


def _c62(p, h, alpha):
    _odd_p(p)
    q = p**h
    _need(h >= 1 and alpha >= 1 and alpha % 2 == 1 and (q - 1) % alpha == 0,
          "alpha must be an odd divisor of p^h-1")
    N = (q - 1) // alpha
    return prank_Cn_formula(p, N)[0], CurveSpec("fermat", p, m=2, n=2 * N)


def _dgz(p, h):
    _need(h >= 1, "h must be >= 1")
    q = p**h
    val = (Fraction(p + 1, 2) ** h - 1) * q**4 - q**3 + q + 1
    return _exact(val, "DGZ formula"), CurveSpec("dgz", p, h=h)


def _bks(p, h):
    _odd_p(p)
    _need(h >= 1, "h must be >= 1")
    q = p**h
    return (((p + 1) // 2) ** h - 1) * q - 1, CurveSpec("bks", p, h=h)


_FAMILIES = {
    "T41_general": _t41,
    "T42_m_qminus1": _t42,
    "T43_p2p1": _t43,
    "T44_half": _t44,
    "T46_pm1_pn1": _t46,
    "C47_char2_zero": _c47,
    "T48_ss_zero": _t48,
    "T49_even": _t49_even,
    "T49_odd": _t49_odd,
    "C410_char2_zero": _c410,
    **{f"C52_{it}": _c52(it) for it in ("i", "ii", "iii", "iv", "v", "vi")},
    "T54_delta_table": _t54,
    "D_odd": _d_odd,
    "D_even": _d_even,
    "D_phplus1": _d_phplus1,
    "C62_equality": _c62,
    "DGZ": _dgz,
    "BKS": _bks,
    "S7_final": _s7,
}

FAMILY_IDS = tuple(_FAMILIES)
FERMAT_FAMILY_IDS = tuple(
    f for f in FAMILY_IDS if f not in ("D_odd", "D_even", "D_phplus1", "DGZ", "BKS")
)


def _evaluate(p: int, family: FamilyId):
    require_prime(p)
    fn = _FAMILIES.get(family.id)
    if fn is None:
        raise ParameterError(f"unknown family id {family.id!r}")
    try:
        return fn(p, **family.params)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {family.id}: {exc}") from None


def family_curve(p: int, family: FamilyId) -> CurveSpec:
    """The curve a family instance describes (applicability is checked)."""
    return _evaluate(p, family)[1]


def _curve_genus(spec: CurveSpec) -> int | None:
    if spec.kind == "fermat":
        return fermat_genus(spec.m, spec.n)
    if spec.kind == "dn":
        return spec.n // 2
    return None


def closed_form(p: int, family: FamilyId) -> PRankReport:
    gamma, spec = _evaluate(p, family)
    return PRankReport(gamma, _curve_genus(spec), f"closed_form:{family.id}", None, (str(family),))


def prank_Dn(p: int, n: int) -> PRankReport:
    """p-rank of y^2 = x(x^n + 1) from the D-family formulas."""
    fam = FamilyId("D_odd" if n % 2 else "D_even", {"n": n})
    return closed_form(p, fam)


# -- matching ------------------------------------------------------------------


def _divisor_pairs(p: int, m: int, n: int):
    cands = []
    cands.append(FamilyId("T41_general", {"m": m, "n": n}))
    cands.append(FamilyId("T41_general", {"m": m, "n": n, "form": "n=p+1"}))
    cands.append(FamilyId("T41_general", {"m": m, "n": n, "form": "m=p-1"}))
    h = _log_p(p, n + 1)
    if h:
        cands.append(FamilyId("T42_m_qminus1", {"m": m, "h": h}))
        cands.append(FamilyId("T42_m_qminus1", {"m": m, "h": h, "form": "power"}))
    if m == p * p + p + 1:
        cands.append(FamilyId("T43_p2p1", {"form": "fermat" if n == m else "p3m1"}))
    h = _log_p(p, 2 * m + 1)
    if h:
        cands.append(FamilyId("T44_half", {"h": h, "form": "fermat" if n == m else "qminus1"}))
    u, v = _log_p(p, m + 1), _log_p(p, n + 1)
    if u and v:
        cands.append(FamilyId("T46_pm1_pn1", {"u": u, "v": v}))
    u = _log_p(p, m - 1)
    if u and v:
        cands.append(FamilyId("T49_even", {"u": u, "v": v}))
        cands.append(FamilyId("T49_odd", {"u": u, "v": v}))
    cands.append(FamilyId("C47_char2_zero", {"m": m, "n": n}))
    cands.append(FamilyId("T48_ss_zero", {"m": m, "n": n}))
    cands.append(FamilyId("C410_char2_zero", {"m": m, "n": n}))
    if m == 2:
        for it in ("i", "ii", "iii", "iv", "v", "vi"):
            for r in range(1, 64):
                try:
                    _, spec = _c52(it)(p, r)
                except NotApplicableError:
                    break
                if spec.n > n:
                    break
                if spec.n == n:
                    cands.append(FamilyId(f"C52_{it}", {"r": r}))
        if p != 2 and n >= 3:
            for it in T54_ITEMS:
                cands.append(FamilyId("T54_delta_table", {"n": n, "item": it}))
        if n % 2 == 0 and p != 2:
            N = n // 2
            h = hyperelliptic_h(p, N)
            cands.append(FamilyId("C62_equality", {"h": h, "alpha": (p**h - 1) // N}))
    if m % (p + 1) == 0 and n % (p + 1) == 0:
        cands.append(FamilyId("S7_final", {"m": m // (p + 1), "n": n // (p + 1)}))
    return cands


def match_families(p: int, m: int, n: int) -> list[FamilyId]:
    """All family instances whose hypotheses hold for y^m = x^n + 1."""
    require_prime(p)
    out = []
    for fam in _divisor_pairs(p, m, n):
        try:
            _, spec = _evaluate(p, fam)
        except (NotApplicableError, ParameterError):
            continue
        if spec.kind == "fermat" and (spec.m, spec.n) == (m, n):
            out.append(fam)
    return out


def match_dn_families(p: int, n: int) -> list[FamilyId]:
    """Family instances describing y^2 = x(x^n + 1)."""
    cands = [FamilyId("D_odd" if n % 2 else "D_even", {"n": n})]
    if n % 2 == 0:
        cands += [FamilyId("D_even", {"n": n, "item": it}) for it in D_EVEN_ITEMS]
    h = _log_p(p, n - 1) if n > 1 else None
    if h:
        cands.append(FamilyId("D_phplus1", {"h": h}))
    out = []
    for fam in cands:
        try:
            _evaluate(p, fam)
        except (NotApplicableError, ParameterError):
            continue
        out.append(fam)
    return out


# -- isogeny identities ----------------------------------------------------------


def kani_rosen_identities(p: int, u: int, k: int) -> list[tuple[str, int, int]]:
    """Evaluate the identities linking y^2 = x^(2^k u) + 1 and y^2 = x(x^(2^k u) + 1).

    F_i is y^2 = x^(2^i u) + 1 (p-rank by the counter), H_i is
    y^2 = x(x^(2^i u) + 1) (p-rank by the D-family formulas).
    """
    require_prime(p)
    if p == 2 or u < 1 or u % 2 == 0 or u % p == 0 or k < 1:
        raise ParameterError("need odd p, odd u >= 1 coprime to p, and k >= 1")
    if 2**k * u > KANI_ROSEN_MAX_N:
        raise LimitExceededError(f"2^k u = {2**k * u} exceeds {KANI_ROSEN_MAX_N}")
    F = [prank_curve_C(p, 2**i * u) for i in range(k + 1)]
    H = [prank_Dn(p, 2**i * u).gamma for i in range(k)]
    out = [("i: g(F0) = g(H0)", F[0], H[0]), ("iv: g(F1) = 2 g(F0)", F[1], 2 * F[0])]
    for i in range(1, k + 1):
        out.append((f"ii: g(H{i - 1}) = g(F{i}) - g(F{i - 1})", H[i - 1], F[i] - F[i - 1]))
    out.append((f"iii: g(F{k}) = g(F0) + sum g(H_i)", F[k], F[0] + sum(H)))
    return out
