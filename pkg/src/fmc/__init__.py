"""Exact decomposition tables for Fulton-MacPherson configuration spaces.

Given a smooth projective base X of dimension d, the compactification X[n]
of the configuration space of n labeled points decomposes, theory by
theory, into shifted copies of the cartesian powers of X.  This package
computes the multiplicities exactly (arbitrary-precision integers
throughout), evaluates the decomposition over supplied graded data, and
cross-checks every multiplicity against independent brute-force and
blowup-construction oracles.
"""

from .polyseries import (
    EGF,
    IntPoly,
    ONE,
    X,
    ZERO,
    binomial,
    egf_exp,
    egf_mul,
    egf_pow,
    egf_term,
    egf_unit,
    egf_zero,
    format_poly,
    monomial,
    poly_mul,
)
from .nests import (
    BudgetError,
    NEST_BUDGET,
    Nest,
    NestStats,
    brute_bivariate,
    enumerate_nests,
    is_nest,
    nest_stats,
    nest_weight,
)
from .genfun import (
    MultiplicityTable,
    egf_solve,
    h_recurrence,
    integer_partitions,
    multiplicity_table,
    recurrence_egf,
    sigma,
    verify_identity,
)
from .theory import (
    FormalDecomposition,
    GradedTable,
    GroupDescriptor,
    SpaceDescriptor,
    ZERO_GROUP,
    Z_GROUP,
    betti_of_fm,
    blowup_formula,
    builtin_space,
    decompose_formal,
    direct_sum,
    evaluate_decomposition,
    formal_evaluation,
    kunneth_rational,
    load_space,
    parse_space,
    proj_bundle_formula,
    proj_bundle_table,
    projective_space_powers,
    projective_space_table,
)
from .oracle import (
    CheckResult,
    VerificationReport,
    brute_equiv,
    palindrome_check,
    run_verification,
    x2_oracle,
    x3_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CheckResult",
    "EGF",
    "FormalDecomposition",
    "GradedTable",
    "GroupDescriptor",
    "IntPoly",
    "MultiplicityTable",
    "NEST_BUDGET",
    "Nest",
    "NestStats",
    "ONE",
    "SpaceDescriptor",
    "VerificationReport",
    "X",
    "ZERO",
    "ZERO_GROUP",
    "Z_GROUP",
    "betti_of_fm",
    "binomial",
    "blowup_formula",
    "brute_bivariate",
    "brute_equiv",
    "builtin_space",
    "decompose_formal",
    "direct_sum",
    "egf_exp",
    "egf_mul",
    "egf_pow",
    "egf_solve",
    "egf_term",
    "egf_unit",
    "egf_zero",
    "enumerate_nests",
    "evaluate_decomposition",
    "formal_evaluation",
    "format_poly",
    "h_recurrence",
    "integer_partitions",
    "is_nest",
    "kunneth_rational",
    "load_space",
    "monomial",
    "multiplicity_table",
    "nest_stats",
    "nest_weight",
    "palindrome_check",
    "parse_space",
    "poly_mul",
    "proj_bundle_formula",
    "proj_bundle_table",
    "projective_space_powers",
    "projective_space_table",
    "recurrence_egf",
    "run_verification",
    "sigma",
    "verify_identity",
    "x2_oracle",
    "x3_oracle",
]
