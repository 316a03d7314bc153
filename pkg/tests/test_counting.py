import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermat_prank.arith import base_p_digits
from fermat_prank.counting import (
    count_box_M,
    count_congruence_box,
    count_dominated_multiples,
    count_T,
    count_T_naive,
    delta_dp,
    delta_enumerate,
    delta_special_cases,
    prank_Cn_formula,
    prank_curve_C,
    prank_general,
    prank_hyperelliptic,
    prank_via_A,
)
from fermat_prank.curves import make_context
from fermat_prank.errors import LimitExceededError, ParameterError

primes = st.sampled_from([2, 3, 5, 7, 11, 13])
odd_primes = st.sampled_from([3, 5, 7, 11, 13])


def brute_T(ctx):
    """T straight from the definition, with math.comb."""
    out = 0
    for j in range(ctx.m + 1):
        for i in range(ctx.n + 1):
            a, b = i * ctx.alpha, j * ctx.beta
            if a <= b and math.comb(b, a) % ctx.p:
                out += 1
    return out


@pytest.mark.parametrize(
    "p,m,n,T,gamma",
    [(5, 4, 4, 15, 3), (3, 2, 8, 14, 2), (2, 3, 3, 9, 0), (5, 2, 4, None, 1), (3, 4, 2, None, 0)],
)
def test_examples(p, m, n, T, gamma):
    ctx = make_context(p, m, n)
    if T is not None:
        assert count_T(ctx).value == T
    assert prank_general(ctx).gamma == gamma


def test_genus_zero_is_zero_with_note():
    rep = prank_general(make_context(7, 2, 2))
    assert rep.gamma == 0 and rep.genus == 0 and "rational curve" in rep.notes


@given(primes, st.integers(2, 14), st.integers(2, 14))
def test_counting_paths_agree_with_definition(p, m, n):
    if (m * n) % p == 0:
        return
    ctx = make_context(p, m, n)
    if ctx.q > 3000:
        return
    want = brute_T(ctx)
    assert count_T_naive(ctx).value == want
    assert count_T(ctx, "dp").value == want
    assert count_T(ctx, "auto").value == want


@given(primes, st.integers(2, 25), st.integers(2, 25))
def test_gamma_range_and_reduced_set(p, m, n):
    if (m * n) % p == 0:
        return
    ctx = make_context(p, m, n)
    g = prank_general(ctx).gamma
    assert 0 <= g <= ctx.genus
    if ctx.genus:
        assert prank_via_A(ctx).gamma == g


@given(primes, st.integers(2, 12), st.integers(2, 12), st.integers(2, 3))
def test_h_invariance(p, m, n, k):
    if (m * n) % p == 0:
        return
    ctx = make_context(p, m, n)
    if ctx.q**k > 10**9:
        return
    big = make_context(p, m, n, h=ctx.h * k)
    assert prank_general(big).gamma == prank_general(ctx).gamma


@given(primes, st.integers(2, 9), st.integers(2, 9))
def test_symmetry_in_m_and_n(p, m, n):
    if (m * n) % p:
        assert prank_general(make_context(p, m, n)).gamma == prank_general(make_context(p, n, m)).gamma


def test_unknown_method():
    with pytest.raises(ParameterError):
        count_T(make_context(5, 4, 4), "quantum")


def test_dp_refuses_huge_modulus():
    ctx = make_context(13, 2, 2 * 37)
    assert ctx.alpha > 10**8
    with pytest.raises(LimitExceededError):
        count_T(ctx, "dp")
    assert count_T(ctx, "auto").value > 0


@given(primes, st.integers(1, 5), st.data())
def test_dominated_multiples_brute(p, h, data):
    q = p**h
    alpha = data.draw(st.sampled_from([d for d in range(1, min(q, 60) + 1) if (q - 1) % d == 0]))
    x = data.draw(st.integers(0, q - 1))
    J = base_p_digits(x, p, h)
    want = sum(1 for u in range(0, x + 1, alpha) if all(a <= b for a, b in zip(base_p_digits(u, p, h), J)))
    assert count_dominated_multiples(J, alpha) == want


# -- y^2 = x^n + 1 ---------------------------------------------------------------


@pytest.mark.parametrize("p,n,gamma", [(3, 8, 2), (7, 3, 1), (5, 4, 1)])
def test_hyperelliptic_examples(p, n, gamma):
    assert prank_hyperelliptic(p, n).gamma == gamma


@pytest.mark.parametrize("p,n,gamma,delta", [(7, 3, 1, 2), (3, 8, 2, 2), (5, 8, 1, 6)])
def test_cn_formula_examples(p, n, gamma, delta):
    assert prank_Cn_formula(p, n) == (gamma, delta)


@given(odd_primes, st.integers(1, 120))
def test_three_paths_for_cn(p, n):
    if n % p == 0:
        return
    g = prank_curve_C(p, n)
    assert prank_hyperelliptic(p, n).gamma == g
    assert prank_Cn_formula(p, n)[0] == g


def test_cn_rejects_char_two():
    with pytest.raises(ParameterError):
        prank_hyperelliptic(2, 5)


@pytest.mark.parametrize("p,h,alpha,M", [(3, 2, 1, 4), (7, 1, 2, 2), (5, 2, 3, None)])
def test_box_M(p, h, alpha, M):
    half = (p - 1) // 2
    want = sum(
        1
        for xs in itertools.product(range(half + 1), repeat=h)
        if sum(x * p**i for i, x in enumerate(xs)) % alpha == 0
    )
    assert count_box_M(p, h, alpha) == want
    if M is not None:
        assert want == M


def test_box_M_rejects():
    with pytest.raises(ParameterError):
        count_box_M(2, 3, 7)
    with pytest.raises(ParameterError):
        count_box_M(5, 2, 5)


# -- congruence box ------------------------------------------------------------


def test_congruence_box_examples():
    assert count_congruence_box(3, 1, 0, [1, 1], 0) == 6
    assert count_congruence_box(4, 0, 3, [1, 1], 0) == 4


@given(st.integers(1, 8), st.integers(1, 3), st.integers(0, 2), st.data())
def test_congruence_box_brute(alpha, h, t, data):
    s = data.draw(st.integers(0, alpha - 1))
    b = data.draw(st.integers(0, alpha - 1))
    units = [c for c in range(1, 3 * alpha + 2) if math.gcd(c, alpha) == 1]
    coeffs = data.draw(st.lists(st.sampled_from(units), min_size=h, max_size=h))
    size = t * alpha + s + 1
    want = sum(
        1
        for xs in itertools.product(range(size), repeat=h)
        if (sum(c * x for c, x in zip(coeffs, xs)) - b) % alpha == 0
    )
    assert count_congruence_box(alpha, t, s, coeffs, b) == want
    small = delta_enumerate(alpha, s, coeffs, b)
    assert delta_dp(alpha, s, coeffs, b) == small
    for value in delta_special_cases(alpha, s, coeffs, b).values():
        assert value == small


@pytest.mark.parametrize(
    "args",
    [(0, 0, 0, [1], 0), (3, 0, 3, [1], 0), (3, 0, 0, [1], 3), (4, 0, 0, [2], 0), (3, 0, 0, [], 0)],
)
def test_congruence_box_rejects(args):
    alpha, t, s, coeffs, b = args
    with pytest.raises(ParameterError):
        count_congruence_box(alpha, t, s, coeffs, b)


def test_delta_enumeration_limit():
    with pytest.raises(LimitExceededError, match="delta too large"):
        delta_enumerate(101, 99, [1] * 5, 0)
