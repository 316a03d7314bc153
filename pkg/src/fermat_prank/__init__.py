"""Exact p-ranks of the curves y^m = x^n + 1 in characteristic p.

The main entry points::

    >>> from fermat_prank import make_context, prank_general
    >>> prank_general(make_context(5, 4, 4)).gamma
    3
"""

from .appendixsets import SetParams, closed_count, enumerate_count
from .arith import base_p_digits, binom_mod_p, digits_le, is_prime, lucas_nonzero, mult_order
from .counting import (
    count_box_M,
    count_congruence_box,
    count_T,
    prank_Cn_formula,
    prank_general,
    prank_hyperelliptic,
    prank_via_A,
)
from .curves import (
    BasisIndex,
    CurveSpec,
    FermatContext,
    basis,
    fermat_genus,
    is_supersingular,
    make_context,
)
from .errors import (
    InvariantViolation,
    LimitExceededError,
    NotApplicableError,
    ParameterError,
    PRankError,
)
from .families import FamilyId, closed_form, kani_rosen_identities, match_families, prank_Dn
from .oracle import cartier_matrix, check_h_step_diagonal, prank_oracle
from .report import PRankReport

__version__ = "0.1.0"

__all__ = [
    "BasisIndex",
    "CurveSpec",
    "FamilyId",
    "FermatContext",
    "InvariantViolation",
    "LimitExceededError",
    "NotApplicableError",
    "PRankError",
    "PRankReport",
    "ParameterError",
    "SetParams",
    "base_p_digits",
    "basis",
    "binom_mod_p",
    "cartier_matrix",
    "check_h_step_diagonal",
    "closed_count",
    "closed_form",
    "count_T",
    "count_box_M",
    "count_congruence_box",
    "digits_le",
    "enumerate_count",
    "fermat_genus",
    "is_prime",
    "is_supersingular",
    "kani_rosen_identities",
    "lucas_nonzero",
    "make_context",
    "match_families",
    "mult_order",
    "prank_Cn_formula",
    "prank_Dn",
    "prank_general",
    "prank_hyperelliptic",
    "prank_oracle",
    "prank_via_A",
]
