"""Cartier-operator oracle for y^m = x^n + 1.

Builds the one-step Cartier matrix on the basis x^(i-1) dx / y^j over F_p and
takes the p-rank as the stable rank of its powers. Matrix entries are
evaluated directly with ``math.comb``, never through the Lucas digit test used
by the counters, so this path can catch a bug there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import binom_mod_p
from .curves import BasisIndex, FermatContext, basis, in_basis
from .errors import InvariantViolation, LimitExceededError, ParameterError
from .report import PRankReport

__all__ = [
    "ORACLE_GENUS_CAP",
    "CartierMatrix",
    "cartier_lift_image",
    "cartier_matrix",
    "cartier_step",
    "check_h_step_diagonal",
    "matrix_power_mod",
    "prank_oracle",
    "rank_mod_p",
    "stable_rank_witness",
]

ORACLE_GENUS_CAP = 512


@dataclass(frozen=True)
class CartierMatrix:
    """Sparse one-step Cartier matrix: each column has at most one entry."""

    p: int
    basis: tuple[BasisIndex, ...]
    columns: dict  # BasisIndex -> (BasisIndex, coeff) | None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def dense(self) -> np.ndarray:
        pos = {b: k for k, b in enumerate(self.basis)}
        A = np.zeros((self.dimension, self.dimension), dtype=np.int64)
        for src, image in self.columns.items():
            if image is not None:
                tgt, c = image
                A[pos[tgt], pos[src]] = c
        return A


def cartier_lift_image(ctx: FermatContext, idx: BasisIndex, w: int) -> tuple[int, dict[int, int]]:
    """Cartier image of x^(i-1) dx / y^j through the lift with ``w``.

    Uses y^-j = (y^-J)^p (x^n + 1)^w where j + m*w = p*J. Returns ``J`` and
    the polynomial part as {exponent e: coeff}, meaning sum coeff * x^e dx / y^J.
    """
    p, m, n = ctx.p, ctx.m, ctx.n
    i, j = idx.i, idx.j
    if w < 0 or (j + m * w) % p:
        raise ParameterError(f"w={w} does not make j + m*w divisible by p")
    poly: dict[int, int] = {}
    for r in range(w + 1):
        if (r * n + i) % p == 0:
            c = math.comb(w, r) % p
            if c:
                e = (r * n + i) // p - 1
                poly[e] = (poly.get(e, 0) + c) % p
    return (j + m * w) // p, {e: c for e, c in poly.items() if c}


def cartier_step(ctx: FermatContext, idx: BasisIndex):
    """One Cartier step on a basis differential: ``(target, coeff)`` or None.

    The least lift w in [0, p-1] leaves at most one surviving term, since
    r*n + i == 0 (mod p) fixes r modulo p.
    """
    w = (-idx.j * pow(ctx.m, -1, ctx.p)) % ctx.p
    J, poly = cartier_lift_image(ctx, idx, w)
    if not poly:
        return None
    if len(poly) != 1:
        raise InvariantViolation(f"least lift of {idx} produced {len(poly)} terms")
    ((e, c),) = poly.items()
    tgt = BasisIndex(e + 1, J)
    if not in_basis(ctx.m, ctx.n, tgt.i, tgt.j):
        raise InvariantViolation(f"Cartier image {tgt} of {idx} left the basis")
    return tgt, c


def cartier_matrix(ctx: FermatContext) -> CartierMatrix:
    if ctx.genus < 1:
        raise ParameterError("the Cartier matrix needs genus >= 1")
    B = tuple(basis(ctx))
    cols = {b: cartier_step(ctx, b) for b in B}
    return CartierMatrix(ctx.p, B, cols)


def matrix_power_mod(A: np.ndarray, k: int, p: int) -> np.ndarray:
    """A**k over F_p by repeated squaring (int64, entries kept reduced)."""
    g = A.shape[0]
    if g and (p - 1) ** 2 * g >= 2**62:
        raise LimitExceededError("entries would overflow int64")
    result = np.eye(g, dtype=np.int64)
    base = A % p
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result


def rank_mod_p(A: np.ndarray, p: int) -> int:
    """Rank over F_p by Gaussian elimination."""
    M = [[int(x) % p for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if M[k][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for k in range(rows):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [(x - f * y) % p for x, y in zip(M[k], M[r])]
        r += 1
        if r == rows:
            break
    return r


def prank_oracle(ctx: FermatContext, cap: int = ORACLE_GENUS_CAP) -> PRankReport:
    """p-rank as the rank of the genus-th power of the Cartier matrix."""
    if ctx.genus < 1:
        raise ParameterError("the oracle needs genus >= 1")
    if ctx.genus > cap:
        raise LimitExceededError(f"genus {ctx.genus} exceeds the oracle cap {cap}")
    A = cartier_matrix(ctx).dense()
    Ag = matrix_power_mod(A, ctx.genus, ctx.p)
    return PRankReport(rank_mod_p(Ag, ctx.p), ctx.genus, "oracle")


def stable_rank_witness(ctx: FermatContext) -> tuple[int, int]:
    """Ranks of A^g and A^(g+1); equal once the rank has stabilised."""
    A = cartier_matrix(ctx).dense()
    Ag = matrix_power_mod(A, ctx.genus, ctx.p)
    return rank_mod_p(Ag, ctx.p), rank_mod_p((Ag @ A) % ctx.p, ctx.p)


def check_h_step_diagonal(ctx: FermatContext) -> bool:
    """True iff A^h is diagonal with entry C(j*beta, i*alpha) mod p at (i, j)."""
    if ctx.genus < 1:
        raise ParameterError("needs genus >= 1")
    cm = cartier_matrix(ctx)
    Ah = matrix_power_mod(cm.dense(), ctx.h, ctx.p)
    diag = np.array(
        [binom_mod_p(b.j * ctx.beta, b.i * ctx.alpha, ctx.p) for b in cm.basis],
        dtype=np.int64,
    )
    return bool(np.array_equal(Ah, np.diag(diag)))
