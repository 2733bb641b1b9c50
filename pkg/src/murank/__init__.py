"""mu-rank of noncommutative quadratic forms on three and four generators."""

from .factor import (
    Factorization,
    InternalInconsistency,
    factor,
    factor_product,
    factor_product_a11nonzero,
    factor_product_a11zero,
    factor_square,
    verify_factorization,
)
from .musym import MuSymMatrix, form_from_matrix, matrix_from_form
from .parser import ParseError, parse_form, parse_mu, render
from .rankcore import (
    Rank,
    RankReport,
    SignChoice,
    dets3,
    dets4_a11nonzero,
    dets4_a11zero,
    exists_sign_vanishing,
    minors3,
    minors4,
    murank,
    murank3,
    murank4,
    relabel,
)
from .scalar import ComplexF, QuadExt, sign_flip, sqrt_candidates
from .skewring import LinearForm, MuError, MuParams, QuadraticForm, multiply_linear

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "InternalInconsistency",
    "factor",
    "factor_product",
    "factor_product_a11nonzero",
    "factor_product_a11zero",
    "factor_square",
    "verify_factorization",
    "MuSymMatrix",
    "form_from_matrix",
    "matrix_from_form",
    "ParseError",
    "parse_form",
    "parse_mu",
    "render",
    "Rank",
    "RankReport",
    "SignChoice",
    "dets3",
    "dets4_a11nonzero",
    "dets4_a11zero",
    "exists_sign_vanishing",
    "minors3",
    "minors4",
    "murank",
    "murank3",
    "murank4",
    "relabel",
    "ComplexF",
    "QuadExt",
    "sign_flip",
    "sqrt_candidates",
    "LinearForm",
    "MuError",
    "MuParams",
    "QuadraticForm",
    "multiply_linear",
]
