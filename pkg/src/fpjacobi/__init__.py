"""Jacobi polynomials on [0, 1] for general complex parameters.

Orthogonality with respect to the weight x^alpha (1-x)^beta holds for all
alpha, beta outside the negative integers (alpha+beta not in {-2, -3, ...})
once the defining integrals are read as Hadamard finite parts; this
package computes the basis, the finite-part bilinear form, expansions of
analytic functions, and the spectral solution of inhomogeneous
hypergeometric equations built on top of it.
"""

from .basis import (
    JacobiBasis,
    JacobiParams,
    carlson_rn,
    default_degree_cap,
    gram_entry,
    jacobi_rodrigues,
    jacobi_via_recurrence,
    norm_an,
    ode_residual_poly,
)
from .errors import (
    DegreeCapExceeded,
    EvaluationFailure,
    FpjacobiError,
    InsufficientData,
    InvalidParameters,
    NonConvergent,
    ParseError,
    PoleError,
    QuadratureFailure,
    RecurrenceBreakdown,
    ResonantEigenvalue,
)
from .expansion import (
    ChebyshevModel,
    EllipseDomain,
    JacobiExpansion,
    chebyshev_fit,
    convergence_estimate,
    evaluate_expansion,
    evaluate_expansion_many,
    expansion_coefficients,
)
from .exprparse import parse_complex_literal, parse_expression
from .finite_part import (
    AnalyticOnInterval,
    TaylorPiece,
    finite_part_poly_weight,
    finite_part_series,
    finite_part_split,
    moment_table,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .poly import DensePoly, poly_combine, poly_derivative, poly_eval
from .solver import (
    HypergeomProblem,
    HypergeomSolution,
    check_resonance,
    lambda_n,
    residual,
    solve,
)
from .special import beta_fp, complex_gamma, pochhammer, reciprocal_gamma

__version__ = "0.1.0"

__all__ = [
    "JacobiBasis",
    "JacobiParams",
    "carlson_rn",
    "default_degree_cap",
    "gram_entry",
    "jacobi_rodrigues",
    "jacobi_via_recurrence",
    "norm_an",
    "ode_residual_poly",
    "DensePoly",
    "poly_combine",
    "poly_derivative",
    "poly_eval",
    "ChebyshevModel",
    "EllipseDomain",
    "JacobiExpansion",
    "chebyshev_fit",
    "convergence_estimate",
    "evaluate_expansion",
    "evaluate_expansion_many",
    "expansion_coefficients",
    "AnalyticOnInterval",
    "TaylorPiece",
    "finite_part_poly_weight",
    "finite_part_series",
    "finite_part_split",
    "moment_table",
    "HypergeomProblem",
    "HypergeomSolution",
    "check_resonance",
    "lambda_n",
    "residual",
    "solve",
    "beta_fp",
    "complex_gamma",
    "pochhammer",
    "reciprocal_gamma",
    "parse_expression",
    "parse_complex_literal",
    "KERNEL_BACKEND",
    "FpjacobiError",
    "PoleError",
    "InvalidParameters",
    "DegreeCapExceeded",
    "RecurrenceBreakdown",
    "NonConvergent",
    "QuadratureFailure",
    "EvaluationFailure",
    "InsufficientData",
    "ResonantEigenvalue",
    "ParseError",
]
