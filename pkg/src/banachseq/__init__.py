"""Weighted block-sequence norms on null sequences.

Builds the family of dense subalgebras of vanishing sequences obtained by
reweighting C^2 blocks through the matrices [[1, r], [-sigma*r, sigma]],
computes the attached equivalence and submultiplicativity constants,
solves quasi-inverses, and scans the growth of the lower bounds that rule
out a first-order multiplication inequality for r outside {0, 1}.
"""

from .c2norms import (
    DEFAULT_SEED,
    Mat2,
    NormParams,
    Vec2,
    c2_norm,
    c_constant,
    d_constant,
    inv_t_matrix,
    mat_mul,
    mat_vec,
    max_norm,
    maxnorm_op_norm,
    scaled_c2_norm,
    t_matrix,
)
from .d1 import (
    D1Estimate,
    D1ScanRecord,
    D1ScanReport,
    IdealCheckReport,
    d1_constant_estimate,
    d1_violation_scan,
    ideal_check,
    ideal_landmark_pair,
    k_lower_bound,
    witness,
)
from .optimize import (
    BoundCheckResult,
    GridSearchResult,
    bilinear_norm_sample,
    d_envelope,
    maximize_over_r,
    verify_c_bound,
    verify_d_bound,
)
from .seqalg import (
    QUASI_SINGULAR_TOL,
    AlgebraParams,
    BlockSequence,
    NotQuasiInvertible,
    QuasiSingular,
    SpectralInvarianceReport,
    WeightFamily,
    a_norm,
    pointwise_product,
    quasi_circle,
    quasi_inverse_c0,
    spectral_invariance_check,
    star,
    sup_norm,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SEED",
    "QUASI_SINGULAR_TOL",
    "Vec2",
    "NormParams",
    "Mat2",
    "t_matrix",
    "inv_t_matrix",
    "mat_vec",
    "mat_mul",
    "max_norm",
    "c2_norm",
    "scaled_c2_norm",
    "maxnorm_op_norm",
    "d_constant",
    "c_constant",
    "WeightFamily",
    "AlgebraParams",
    "BlockSequence",
    "NotQuasiInvertible",
    "QuasiSingular",
    "SpectralInvarianceReport",
    "sup_norm",
    "a_norm",
    "pointwise_product",
    "star",
    "quasi_circle",
    "quasi_inverse_c0",
    "spectral_invariance_check",
    "D1ScanRecord",
    "D1ScanReport",
    "D1Estimate",
    "IdealCheckReport",
    "witness",
    "k_lower_bound",
    "d1_violation_scan",
    "d1_constant_estimate",
    "ideal_check",
    "ideal_landmark_pair",
    "GridSearchResult",
    "BoundCheckResult",
    "d_envelope",
    "maximize_over_r",
    "verify_d_bound",
    "verify_c_bound",
    "bilinear_norm_sample",
]
