"""Growth-rate branch analysis for the stochastic logistic map.

The library answers one question end to end: for a population state
X ~ N(mu, sigma2) evolved by X' = r X (1 - X) eps, which uniform
structural growth rates r realize prescribed mean and variance scaling
factors?  The admissible rates are the positive roots of a cubic; this
package builds that cubic, classifies its root structure, sweeps the
mean to map feasible and infeasible regions, and cross-checks every
analytic result by Monte Carlo simulation of the recurrence.
"""

from .cubic import (
    CubicCoeffs,
    ForwardMap,
    ModelParams,
    build_coefficients,
    eval_deriv,
    eval_poly,
    eval_second,
    forward_alpha_beta,
    leading_mu_factor,
    sigma2_from_root,
)
from .errors import NumericalError, ValidationError
from .feasibility import (
    BranchCurve,
    BranchRow,
    ComparisonReport,
    GridSpec,
    Status,
    compare_sweeps,
    infeasible_intervals,
    sweep_mu,
)
from .moments import (
    NormalParams,
    expectation_oracle,
    normal_raw_moment,
    raw_moment_oracle,
    std_normal_moment,
    structural_second_moment,
)
from .montecarlo import (
    EpsilonSpec,
    SimReport,
    VerifyResult,
    sample_epsilon,
    simulate_step,
    verify_root,
)
from .roots import (
    ConditionWitness,
    RootClassification,
    RootSigma,
    classify,
    discriminant_delta,
    inflection_point,
    monomial_scale,
    real_roots,
    stationary_points,
    two_root_condition,
)

__version__ = "0.1.0"

__all__ = [
    "BranchCurve",
    "BranchRow",
    "ComparisonReport",
    "ConditionWitness",
    "CubicCoeffs",
    "EpsilonSpec",
    "ForwardMap",
    "GridSpec",
    "ModelParams",
    "NormalParams",
    "NumericalError",
    "RootClassification",
    "RootSigma",
    "SimReport",
    "Status",
    "ValidationError",
    "VerifyResult",
    "build_coefficients",
    "classify",
    "compare_sweeps",
    "discriminant_delta",
    "eval_deriv",
    "eval_poly",
    "eval_second",
    "expectation_oracle",
    "forward_alpha_beta",
    "infeasible_intervals",
    "inflection_point",
    "leading_mu_factor",
    "monomial_scale",
    "normal_raw_moment",
    "raw_moment_oracle",
    "real_roots",
    "sample_epsilon",
    "sigma2_from_root",
    "simulate_step",
    "stationary_points",
    "std_normal_moment",
    "structural_second_moment",
    "sweep_mu",
    "two_root_condition",
    "verify_root",
]
