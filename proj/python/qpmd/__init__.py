"""Subspace designs, q-matroids and derived designs over finite fields."""

from ._qpmd import (
    Design,
    DesignParams,
    EnumerationLimitError,
    FormatError,
    automorphism_order,
    corollary_sts_params,
    derive,
    derived_block_count,
    derived_params,
    gaussian_binomial,
    parse_design,
    rank,
    spread,
    sts_admissible,
    supplementary,
    verify,
)

__all__ = [
    "Design",
    "DesignParams",
    "EnumerationLimitError",
    "FormatError",
    "automorphism_order",
    "corollary_sts_params",
    "derive",
    "derived_block_count",
    "derived_params",
    "gaussian_binomial",
    "parse_design",
    "rank",
    "spread",
    "sts_admissible",
    "supplementary",
    "verify",
]
