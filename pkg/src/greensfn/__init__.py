"""Green's function of the bounded-solutions problem via Newton interpolation.

For x'(t) = A x(t) + f(t) with no spectrum on the imaginary axis, the unique
bounded solution is the convolution of f with the Green's function G(t),
itself a half-plane exponential applied to A.  This package evaluates G(t)
through the half-degree Newton interpolation form, computes the spectral
projectors, estimates the sensitivity of A -> G(t), and solves for bounded
trajectories by quadrature.
"""

from .bounded import (
    ForcingFunction,
    bounded_solution,
    constant_forcing,
    load_forcing_table,
    residual_check,
    trig_forcing,
)
from .divdiff import (
    AnalyticFunction,
    DividedDifferenceTable,
    analytic_exp,
    dd_contour_oracle,
    dd_distinct_oracle,
    divided_differences,
)
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    TrialResult,
    random_rectangle_matrix,
    run_experiment,
)
from .greens import (
    GreensEvaluator,
    GreensReport,
    NewtonForm,
    OracleUnavailable,
    PrecomputedProducts,
    as_evaluator,
    greens_function,
    greens_oracle,
    greens_scalar,
    newton_form,
    precompute_products,
    spectral_projectors,
    spectrum_split_of,
    verify_greens,
)
from .matrices import (
    EigenData,
    EigenvalueConvergenceError,
    SingularMatrixError,
    eigenvalues,
    greedy_match_distance,
    inverse,
    load_matrix,
    matmul,
    save_matrix,
    spectral_norm,
)
from .quadrature import QuadratureError, QuadratureSpec
from .sensitivity import (
    CondEstimate,
    apply_differential,
    condition_bound,
    differential_spectrum,
    frobenius_lift_norm,
    gt_divided_diff,
    kronecker_differential_oracle,
    norm_profile,
)
from .spectrum import (
    DichotomyError,
    PoleError,
    SpectrumSplit,
    snap_eigenvalue_clusters,
    split_spectrum,
    tilde_exp_minus,
    tilde_exp_plus,
    tilde_pi_minus,
    tilde_pi_plus,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction",
    "CondEstimate",
    "DichotomyError",
    "DividedDifferenceTable",
    "EigenData",
    "EigenvalueConvergenceError",
    "ExperimentConfig",
    "ExperimentResult",
    "ForcingFunction",
    "GreensEvaluator",
    "GreensReport",
    "NewtonForm",
    "OracleUnavailable",
    "PoleError",
    "PrecomputedProducts",
    "QuadratureError",
    "QuadratureSpec",
    "SingularMatrixError",
    "SpectrumSplit",
    "TrialResult",
    "analytic_exp",
    "apply_differential",
    "as_evaluator",
    "bounded_solution",
    "condition_bound",
    "constant_forcing",
    "dd_contour_oracle",
    "dd_distinct_oracle",
    "differential_spectrum",
    "divided_differences",
    "eigenvalues",
    "frobenius_lift_norm",
    "greedy_match_distance",
    "greens_function",
    "greens_oracle",
    "greens_scalar",
    "gt_divided_diff",
    "inverse",
    "kronecker_differential_oracle",
    "load_forcing_table",
    "load_matrix",
    "matmul",
    "newton_form",
    "norm_profile",
    "precompute_products",
    "random_rectangle_matrix",
    "residual_check",
    "run_experiment",
    "save_matrix",
    "snap_eigenvalue_clusters",
    "spectral_norm",
    "spectral_projectors",
    "spectrum_split_of",
    "split_spectrum",
    "tilde_exp_minus",
    "tilde_exp_plus",
    "tilde_pi_minus",
    "tilde_pi_plus",
    "trig_forcing",
    "verify_greens",
]
