"""Verification suites: closed forms, oracle, appendix sets, isogeny identities,
and the congruence-box lemma, each checked against an independent computation.

Every check is a picklable work item ``(function name, args)`` so suites can
fan out over a process pool; results always come back in input order.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import is_prime
from .appendixsets import SetParams, closed_count, enumerate_count
from .counting import (
    count_congruence_box,
    count_T,
    delta_enumerate,
    delta_special_cases,
    hyperelliptic_h,
    prank_curve_C,
    prank_general,
    prank_via_A,
)
from .curves import fermat_genus, make_context
from .errors import NotApplicableError, ParameterError, PRankError
from .families import (
    FamilyId,
    _t54_items,
    closed_form,
    family_curve,
    kani_rosen_identities,
    prank_Dn,
)
from .oracle import check_h_step_diagonal, prank_oracle

__all__ = [
    "SUITES",
    "SuiteResult",
    "family_instances",
    "oracle_instances",
    "run_suite",
    "zero_family_instances",
]

SUITES = ("formulas", "oracle", "appendix", "kani-rosen", "lemma53")
PRIMES = (2, 3, 5, 7, 11, 13)
SEED = 0
SAMPLES = 200


@dataclass
class SuiteResult:
    suite: str
    passed: int = 0
    failed: int = 0
    mismatches: list[str] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0


# -- instance generators -------------------------------------------------------


def _divisors(x: int) -> list[int]:
    return [d for d in range(1, x + 1) if x % d == 0]


def _fits(p: int, m: int, n: int, max_genus: int) -> bool:
    return m >= 2 and n >= 2 and (m * n) % p != 0 and fermat_genus(m, n) <= max_genus


def _powers_below(p: int, limit: int, start: int = 1) -> Iterator[int]:
    e = start
    while p**e <= limit:
        yield e
        e += 1


def family_instances(p: int, max_genus: int) -> Iterator[FamilyId]:
    """Every instance of every y^m = x^n + 1 family with genus <= max_genus."""
    top = 2 * max_genus + 3  # n <= top whenever m >= 2 and genus <= max_genus
    odd = p != 2
    for m in _divisors(p - 1):
        for n in _divisors(p + 1):
            if _fits(p, m, n, max_genus):
                yield FamilyId("T41_general", {"m": m, "n": n})
                if n == p + 1:
                    yield FamilyId("T41_general", {"m": m, "n": n, "form": "n=p+1"})
                if m == p - 1:
                    yield FamilyId("T41_general", {"m": m, "n": n, "form": "m=p-1"})
    for h in _powers_below(p, top + 1):
        n = p**h - 1
        for m in _divisors(n):
            if _fits(p, m, n, max_genus):
                yield FamilyId("T42_m_qminus1", {"m": m, "h": h})
                if (p - 1) % m == 0:
                    yield FamilyId("T42_m_qminus1", {"m": m, "h": h, "form": "power"})
    m = p * p + p + 1
    for form, n in (("fermat", m), ("p3m1", p**3 - 1)):
        if _fits(p, m, n, max_genus):
            yield FamilyId("T43_p2p1", {"form": form})
    if odd:
        for h in _powers_below(p, top + 1):
            m = (p**h - 1) // 2
            for form, n in (("fermat", m), ("qminus1", 2 * m)):
                if _fits(p, m, n, max_genus):
                    yield FamilyId("T44_half", {"h": h, "form": form})
    for u in _powers_below(p, top + 2):
        for v in _powers_below(p, top + 2):
            if _fits(p, p**u - 1, p**v - 1, max_genus):
                yield FamilyId("T46_pm1_pn1", {"u": u, "v": v})
            if _fits(p, p**u + 1, p**v - 1, max_genus):
                branch = "T49_even" if (v // math.gcd(u, v)) % 2 == 0 else "T49_odd"
                yield FamilyId(branch, {"u": u, "v": v})
    if odd:
        for item in ("i", "ii", "iii", "iv", "v", "vi"):
            for r in itertools.count(1):
                try:
                    spec = family_curve(p, FamilyId(f"C52_{item}", {"r": r}))
                except NotApplicableError:
                    break
                if spec.n > top:
                    break
                if _fits(p, 2, spec.n, max_genus):
                    yield FamilyId(f"C52_{item}", {"r": r})
        for h in _powers_below(p, top * (p + 3)):
            for alpha in _divisors(p**h - 1):
                n = (p**h - 1) // alpha
                if n < 3 or n > top or hyperelliptic_h(p, n) != h:
                    continue
                if not _fits(p, 2, n, max_genus):
                    continue
                for item in _t54_items(p, n):
                    yield FamilyId("T54_delta_table", {"n": n, "item": item})
                if alpha % 2 and h <= 3:
                    yield FamilyId("C62_equality", {"h": h, "alpha": alpha})
    if odd:
        for m in _divisors(p - 1):
            for n in _divisors(p - 1):
                if _fits(p, m * (p + 1), n * (p + 1), max_genus):
                    yield FamilyId("S7_final", {"m": m, "n": n})


def zero_family_instances(p: int, max_uv: int = 4) -> Iterator[FamilyId]:
    """Zero p-rank family instances with exponents built from u, v <= max_uv."""
    seen = set()

    def once(fam):
        key = (fam.id, tuple(fam.params.items()))
        if key in seen:
            return None
        seen.add(key)
        return fam

    uvs = list(itertools.product(range(max_uv + 1), repeat=2))
    for u, v in uvs:
        for m in _divisors(p**u + 1):
            for n in _divisors(p**v + 1):
                if m >= 2 and n >= 2 and (m * n) % p:
                    f = once(FamilyId("T48_ss_zero", {"m": m, "n": n}))
                    if f:
                        yield f
    if p != 2:
        return
    for u, v in uvs:
        if u < 1 or v < 1:
            continue
        if math.gcd(u, v) == 1:
            for m in _divisors(2**u - 1):
                for n in _divisors(2**v - 1):
                    if m >= 2 and n >= 2:
                        f = once(FamilyId("C47_char2_zero", {"m": m, "n": n}))
                        if f:
                            yield f
        if (v // math.gcd(u, v)) % 2:
            for m in _divisors(2**u + 1):
                for n in _divisors(2**v - 1):
                    if m >= 2 and n >= 2:
                        f = once(FamilyId("C410_char2_zero", {"m": m, "n": n, "u": u, "v": v}))
                        if f:
                            yield f


def oracle_instances(max_p: int, max_genus: int) -> Iterator[tuple[int, int, int]]:
    """All (p, m, n) with p <= max_p prime, genus in [1, max_genus]."""
    top = 2 * max_genus + 3
    for p in (q for q in range(2, max_p + 1) if is_prime(q)):
        for m in range(2, top + 1):
            for n in range(2, top + 1):
                if (m * n) % p and 1 <= fermat_genus(m, n) <= max_genus:
                    yield p, m, n


# -- individual checks (module level so they pickle) ----------------------------


def _check_family(p, fid, params):
    fam = FamilyId(fid, params)
    rep = closed_form(p, fam)
    spec = family_curve(p, fam)
    got = prank_general(make_context(spec.p, spec.m, spec.n)).gamma
    return f"p={p} {fam}", rep.gamma == got, f"closed={rep.gamma} counter={got}"


def _check_methods(p, m, n):
    ctx = make_context(p, m, n)
    T = {"naive": count_T(ctx, "naive").value}
    if ctx.alpha <= 10**5:
        T["dp"] = count_T(ctx, "dp").value
    g = prank_general(ctx).gamma
    gA = prank_via_A(ctx).gamma
    ok = len(set(T.values())) == 1 and g == gA
    return f"p={p} m={m} n={n}", ok, f"T={T} gamma={g} via_A={gA}"


def _check_oracle(p, m, n):
    ctx = make_context(p, m, n)
    g = prank_general(ctx).gamma
    o = prank_oracle(ctx).gamma
    diag = check_h_step_diagonal(ctx)
    return f"p={p} m={m} n={n}", g == o and diag, f"counter={g} oracle={o} h-step={diag}"


def _check_appendix(which, b, m, n):
    sp = SetParams(which, b, m, n)
    c, e = closed_count(sp), enumerate_count(sp)
    return f"{which} b={b} m={m} n={n}", c == e, f"closed={c} enumerated={e}"


def _check_kani_rosen(p, u, k):
    rows = kani_rosen_identities(p, u, k)
    bad = [f"{name}: {lhs} != {rhs}" for name, lhs, rhs in rows if lhs != rhs]
    return f"p={p} u={u} k={k}", not bad, "; ".join(bad) or f"{len(rows)} identities"


def _check_dn(p, n):
    d = prank_Dn(p, n).gamma
    if n % 2:
        ref = prank_curve_C(p, n)
    else:
        ref = prank_curve_C(p, 2 * n) - prank_curve_C(p, n)
    return f"p={p} n={n}", d == ref, f"family={d} counter={ref}"


def box_brute_counts(alpha: int, size: int, coeffs) -> np.ndarray:
    """Counts of sum(c_i x_i) mod alpha over x in [0, size-1]^h, indexed by residue."""
    acc = np.zeros((1,), dtype=np.int64)
    for c in coeffs:
        acc = (acc[:, None] + c * np.arange(size, dtype=np.int64)[None, :]).ravel() % alpha
    return np.bincount(acc, minlength=alpha)


def _check_lemma53(p, alpha, h):
    coeffs = [pow(p, i, alpha) if alpha > 1 else 1 for i in range(h)]
    bad = []
    cases = 0
    for s in range(alpha):
        small = box_brute_counts(alpha, s + 1, coeffs)
        for t in range(3):
            big = box_brute_counts(alpha, t * alpha + s + 1, coeffs)
            for b in range(alpha):
                got = count_congruence_box(alpha, t, s, coeffs, b)
                cases += 1
                if got != big[b]:
                    bad.append(f"t={t} s={s} b={b}: formula={got} brute={big[b]}")
        for b in range(alpha):
            enum = delta_enumerate(alpha, s, coeffs, b)
            if enum != small[b]:
                bad.append(f"s={s} b={b}: enumerate={enum} brute={small[b]}")
            for case, val in delta_special_cases(alpha, s, coeffs, b).items():
                cases += 1
                if val != small[b]:
                    bad.append(f"case ({case}) s={s} b={b}: closed={val} brute={small[b]}")
    return f"p={p} alpha={alpha} h={h}", not bad, "; ".join(bad[:3]) or f"{cases} cases"


_CHECKS = {
    f.__name__: f
    for f in (
        _check_family,
        _check_methods,
        _check_oracle,
        _check_appendix,
        _check_kani_rosen,
        _check_dn,
        _check_lemma53,
    )
}


def _run_item(item):
    name, args = item
    try:
        return _CHECKS[name](*args)
    except PRankError as exc:
        return f"{name}{args}", False, f"{type(exc).__name__}: {exc}"


# -- suites ----------------------------------------------------------------------


def _primes_upto(max_p: int) -> list[int]:
    return [p for p in PRIMES if p <= max_p] + [
        q for q in range(PRIMES[-1] + 1, max_p + 1) if is_prime(q)
    ]


def _formula_items(max_p, max_genus):
    for p in _primes_upto(max_p):
        for fam in family_instances(p, max_genus):
            yield "_check_family", (p, fam.id, fam.params)
        if p <= 5:
            for fam in zero_family_instances(p):
                spec = family_curve(p, fam)
                if fermat_genus(spec.m, spec.n) <= max(max_genus, 2000):
                    yield "_check_family", (p, fam.id, fam.params)
    rng = random.Random(SEED)
    primes = _primes_upto(max_p)
    sample_genus = min(max_genus, 300)
    drawn = 0
    while drawn < SAMPLES:
        p = rng.choice(primes)
        m, n = rng.randint(2, 40), rng.randint(2, 40)
        if (m * n) % p == 0 or fermat_genus(m, n) > sample_genus:
            continue
        drawn += 1
        yield "_check_methods", (p, m, n)


def _items(suite: str, max_p: int, max_genus: int):
    if suite == "formulas":
        return list(_formula_items(max_p, max_genus))
    if suite == "oracle":
        return [("_check_oracle", t) for t in oracle_instances(max_p, max_genus)]
    if suite == "appendix":
        out = [("_check_appendix", ("A1", p, 1, 1)) for p in (2, 3, 5, 7)]
        for which in ("A2", "A3", "A4"):
            for b in range(2 if which == "A3" else 1, 10):
                for m in range(1, 5):
                    for n in range(1, 5):
                        out.append(("_check_appendix", (which, b, m, n)))
        return out
    if suite == "kani-rosen":
        odd = [p for p in _primes_upto(max_p) if p != 2]
        out = [
            ("_check_kani_rosen", (p, u, k))
            for p in odd
            for u in (1, 3, 5, 7, 9)
            if u % p
            for k in (1, 2)
        ]
        out += [("_check_dn", (p, n)) for p in odd for n in range(1, 41) if n % p]
        return out
    if suite == "lemma53":
        return [
            ("_check_lemma53", (p, alpha, h))
            for p in (3, 5, 7)
            for alpha in range(1, 9)
            if math.gcd(p, alpha) == 1
            for h in range(1, 5)
        ]
    raise ParameterError(f"unknown suite {suite!r}")


DEFAULT_MAX_GENUS = {"formulas": 2000, "oracle": 50}


def run_suite(
    suite: str,
    max_p: int = 13,
    max_genus: int | None = None,
    jobs: int = 1,
    keep: int = 5,
) -> SuiteResult:
    """Run one suite; ``keep`` bounds the number of mismatch details recorded."""
    if max_genus is None:
        max_genus = DEFAULT_MAX_GENUS.get(suite, 2000)
    if max_p < 2 or max_genus < 1:
        raise ParameterError("max_p must be >= 2 and max_genus >= 1")
    start = time.perf_counter()
    items = _items(suite, max_p, max_genus)
    res = SuiteResult(suite)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_item, items, chunksize=max(1, len(items) // (8 * jobs))))
    else:
        outcomes = map(_run_item, items)
    for label, ok, detail in outcomes:
        if ok:
            res.passed += 1
        else:
            res.failed += 1
            if len(res.mismatches) < keep:
                res.mismatches.append(f"{label}: {detail}")
    res.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return res
