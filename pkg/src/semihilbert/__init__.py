"""Computable calculus for the seminorm induced by a PSD matrix.

A PSD matrix A induces the semi-inner product <x, y>_A = <A x, y> and its
seminorm.  This package computes the operator quantities attached to that
seminorm (operator seminorm, A-adjoint, numerical radius, Crawford number),
checks the inequality chains relating them, and provides randomized
campaigns plus a CLI around those checks.
"""

from .errors import (
    DimensionMismatch,
    NoAdjoint,
    NoConvergence,
    NotHermitian,
    NotPSD,
    ParseError,
    PreconditionNotMet,
    RankTooSmall,
    SemiHilbertError,
)
from .fuzz import (
    CampaignConfig,
    CampaignReport,
    CHECK_ORDER,
    gen_admissible,
    gen_psd,
    gen_special,
    lift,
    run_campaign,
    run_single_trial,
)
from .inequalities import (
    EqualityDiagnostic,
    InequalityReport,
    adaptive_simpson,
    check_adjoint_sum_bound,
    check_fourth_power_bounds,
    check_halfnorm_bounds,
    check_hh_triangle,
    check_integral_radius_bound,
    check_positive_product_equality,
    check_power_inequality,
    check_real_part_bounds,
    check_reverse_power,
    check_square_bounds,
    max_equality_diagnostic,
    pythagoras_diagnostic,
    radius_additivity_diagnostic,
    squares_radius_equality,
    triangle_equality_diagnostic,
    verify_square_identity,
)
from .radius import (
    RadiusEstimate,
    a_crawford,
    a_crawford_sampled,
    a_numerical_radius,
    a_numerical_radius_oracle,
    sup_sweep,
    support_max,
)
from .semispace import (
    OperatorInSpace,
    SemiHilbertSpace,
    a_inner,
    a_norm_vec,
    a_operator_norm,
    a_operator_norm_sampled,
    bind,
    compress,
    is_a_normal,
    is_a_positive,
    is_a_selfadjoint,
    make_space,
    sharp,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignConfig",
    "CampaignReport",
    "CHECK_ORDER",
    "DimensionMismatch",
    "EqualityDiagnostic",
    "InequalityReport",
    "NoAdjoint",
    "NoConvergence",
    "NotHermitian",
    "NotPSD",
    "OperatorInSpace",
    "ParseError",
    "PreconditionNotMet",
    "RadiusEstimate",
    "RankTooSmall",
    "SemiHilbertError",
    "SemiHilbertSpace",
    "a_crawford",
    "a_crawford_sampled",
    "a_inner",
    "a_norm_vec",
    "a_numerical_radius",
    "a_numerical_radius_oracle",
    "a_operator_norm",
    "a_operator_norm_sampled",
    "adaptive_simpson",
    "bind",
    "check_adjoint_sum_bound",
    "check_fourth_power_bounds",
    "check_halfnorm_bounds",
    "check_hh_triangle",
    "check_integral_radius_bound",
    "check_positive_product_equality",
    "check_power_inequality",
    "check_real_part_bounds",
    "check_reverse_power",
    "check_square_bounds",
    "compress",
    "gen_admissible",
    "gen_psd",
    "gen_special",
    "is_a_normal",
    "is_a_positive",
    "is_a_selfadjoint",
    "lift",
    "make_space",
    "max_equality_diagnostic",
    "pythagoras_diagnostic",
    "radius_additivity_diagnostic",
    "run_campaign",
    "run_single_trial",
    "sharp",
    "squares_radius_equality",
    "sup_sweep",
    "support_max",
    "triangle_equality_diagnostic",
    "verify_square_identity",
]
