import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermat_prank.counting import prank_curve_C, prank_general
from fermat_prank.curves import is_supersingular, make_context
from fermat_prank.errors import LimitExceededError, NotApplicableError, ParameterError
from fermat_prank.families import (
    FAMILY_IDS,
    FERMAT_FAMILY_IDS,
    FamilyId,
    closed_form,
    family_curve,
    kani_rosen_identities,
    match_dn_families,
    match_families,
    prank_Dn,
)


def cf(p, fid, **params):
    return closed_form(p, FamilyId(fid, params)).gamma


def counter(p, fam):
    spec = family_curve(p, fam)
    return prank_general(make_context(p, spec.m, spec.n)).gamma


@pytest.mark.parametrize(
    "p,fid,params,gamma",
    [
        (5, "T41_general", {"m": 4, "n": 2}, 1),
        (3, "T43_p2p1", {"form": "fermat"}, 21),
        (3, "C52_i", {"r": 2}, 2),
        (2, "T46_pm1_pn1", {"u": 2, "v": 2}, 0),
        (3, "D_phplus1", {"h": 1}, 2),
        (3, "DGZ", {"h": 1}, 58),
        (5, "S7_final", {"m": 2, "n": 2}, 27),
    ],
)
def test_examples(p, fid, params, gamma):
    assert cf(p, fid, **params) == gamma


def test_report_fields():
    rep = closed_form(5, FamilyId("T41_general", {"m": 4, "n": 2}))
    assert rep.method == "closed_form:T41_general" and rep.genus == 1


@pytest.mark.parametrize(
    "p,fid,params,needle",
    [
        (5, "T41_general", {"m": 3, "n": 2}, "m=3 must divide p-1"),
        (2, "T44_half", {"h": 3}, "p must be odd"),
        (7, "C47_char2_zero", {"m": 3, "n": 3}, "p must be 2"),
        (3, "T49_even", {"u": 1, "v": 1}, "v/gcd(u,v) must be even"),
        (5, "T54_delta_table", {"n": 8, "item": "v"}, "item (v)"),
        (7, "C62_equality", {"h": 1, "alpha": 2}, "odd divisor"),
        (2, "C410_char2_zero", {"m": 3, "n": 3, "u": 1, "v": 2}, "v/gcd(u,v) must be odd"),
    ],
)
def test_not_applicable_names_condition(p, fid, params, needle):
    with pytest.raises(NotApplicableError, match="family not applicable") as exc:
        closed_form(p, FamilyId(fid, params))
    assert needle in str(exc.value)


def test_unknown_family_and_params():
    with pytest.raises(ParameterError):
        closed_form(5, FamilyId("T99", {}))
    with pytest.raises(ParameterError):
        closed_form(5, FamilyId("T41_general", {"m": 4, "n": 2, "zzz": 1}))
    with pytest.raises(ParameterError):
        closed_form(5, FamilyId("T41_general", {"m": 4, "n": 2, "form": "other"}))


def test_catalog_ids():
    assert len(set(FAMILY_IDS)) == len(FAMILY_IDS) == 24
    assert set(FAMILY_IDS) - set(FERMAT_FAMILY_IDS) == {"D_odd", "D_even", "D_phplus1", "DGZ", "BKS"}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_t41_special_forms(p):
    for m in (d for d in range(2, p) if (p - 1) % d == 0):
        assert cf(p, "T41_general", m=m, n=p + 1, form="n=p+1") == cf(p, "T41_general", m=m, n=p + 1)
    for n in (d for d in range(2, p + 2) if (p + 1) % d == 0):
        assert cf(p, "T41_general", m=p - 1, n=n, form="m=p-1") == cf(p, "T41_general", m=p - 1, n=n)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_t42_forms_agree(p):
    for h in (1, 2, 3):
        q1 = p**h - 1
        for m in (d for d in range(2, p) if (p - 1) % d == 0):
            assert cf(p, "T42_m_qminus1", m=m, h=h) == cf(p, "T42_m_qminus1", m=m, h=h, form="power")
        if q1 >= 2 and q1 <= 200:
            for m in (d for d in range(2, q1 + 1) if q1 % d == 0):
                fam = FamilyId("T42_m_qminus1", {"m": m, "h": h})
                assert closed_form(p, fam).gamma == counter(p, fam)


def test_bassa_beelen_special_case():
    for p in (3, 5, 7):
        for h in (1, 2):
            q = p**h
            want = (p * (p + 1) // 2) ** h - 3 * (q - 1)
            assert cf(p, "T46_pm1_pn1", u=h, v=h) == want


def test_t49_char_two_odd_branch_is_zero():
    for u in range(1, 4):
        for v in (3, 5):
            if (v // math.gcd(u, v)) % 2:
                fam = FamilyId("T49_odd", {"u": u, "v": v})
                assert closed_form(2, fam).gamma == 0 == counter(2, fam)


def test_t49_even_branch_also_holds_in_char_two():
    fam = FamilyId("T49_even", {"u": 1, "v": 2})
    assert closed_form(2, fam).gamma == counter(2, fam)


def test_t54_entailments_hold():
    from fermat_prank.families import _t54_items

    for p in (3, 5, 7, 11, 13):
        for n in range(3, 300):
            if n % p:
                _t54_items(p, n)  # raises InvariantViolation on a broken entailment


def test_zero_rank_not_supersingular():
    ctx = make_context(2, 3, 5)
    assert prank_general(ctx).gamma == 0
    assert is_supersingular(ctx)[0] is False
    # 3 | 2^1 + 1 and 5 | 2^2 + 1, yet 15 never divides 2^h + 1
    assert match_families(2, 3, 5) == [FamilyId("T48_ss_zero", {"m": 3, "n": 5})]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_every_match_agrees_with_counter(p):
    seen = 0
    for m in range(2, 30):
        for n in range(2, 30):
            if (m * n) % p:
                for fam in match_families(p, m, n):
                    seen += 1
                    assert closed_form(p, fam).gamma == counter(p, fam), (p, m, n, fam)
    assert seen > 0


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 40))
def test_dn_bridge(p, n):
    if n % p == 0:
        return
    got = prank_Dn(p, n).gamma
    if n % 2:
        assert got == prank_curve_C(p, n)
    else:
        assert got == prank_curve_C(p, 2 * n) - prank_curve_C(p, n)
    for fam in match_dn_families(p, n):
        assert closed_form(p, fam).gamma == got


@pytest.mark.parametrize("p,h", [(3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)])
def test_dgz_and_bks_components(p, h):
    q = p**h
    gF = prank_general(make_context(p, q - 1, q - 1)).gamma
    assert gF == (((p + 1) // 2) ** h - 3) * q + 3
    assert cf(p, "DGZ", h=h) == 2 * q**4 + (gF - 4) * q**3 + q + 1
    assert cf(p, "BKS", h=h) == (prank_curve_C(p, 2 * (q - 1)) + 1) * q - 1


def test_dgz_char_two_is_integral():
    assert cf(2, "DGZ", h=2) == 261


@pytest.mark.parametrize("p,u,k", [(5, 1, 1), (5, 3, 1), (7, 3, 2), (7, 5, 2), (3, 5, 3)])
def test_kani_rosen(p, u, k):
    rows = kani_rosen_identities(p, u, k)
    assert rows and all(lhs == rhs for _, lhs, rhs in rows)
    names = " ".join(name for name, _, _ in rows)
    assert "ii:" in names and "iii:" in names and "iv:" in names


def test_kani_rosen_rejects():
    with pytest.raises(ParameterError):
        kani_rosen_identities(2, 3, 1)
    with pytest.raises(ParameterError):
        kani_rosen_identities(5, 4, 1)
    with pytest.raises(ParameterError):
        kani_rosen_identities(5, 5, 1)
    with pytest.raises(LimitExceededError):
        kani_rosen_identities(5, 3, 30)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_c62_equality(p):
    for h in (1, 2, 3):
        q = p**h
        for alpha in (a for a in range(1, q, 2) if (q - 1) % a == 0):
            N = (q - 1) // alpha
            assert prank_curve_C(p, N) == prank_curve_C(p, 2 * N) == cf(p, "C62_equality", h=h, alpha=alpha)
