"""High-precision minimax approximation on symmetric intervals, the
conformal-map machinery behind its error asymptotics, and verification
tools for the structural identities tying the two together.

Layers, bottom up:

* specialfn: arbitrary-precision gamma, Gauss-Legendre quadrature with
  endpoint-singularity handling, Cauchy transforms with boundary values,
  and a double-precision discrete Hilbert transform.
* remez: weighted Remez exchange for the three problem families (even
  power approximation, odd sign-function Laurent approximation, shifted
  reciprocal-power approximation).
* conformal: slit maps of the upper half-plane built from gamma-type
  densities, their normalization constants, and the limit profiles of
  rescaled approximants.
* asymptotics: closed-form error predictors and sweep reports comparing
  them against solver output.
* curveverify: phase reconstruction along the imaginary axis, the curve
  functional-equation residual, coefficient sign-pattern checks, and
  profile-convergence measurements.
* conjecture: exploratory double-precision solver for the whole-line
  phase equation; reports residuals only.
"""

from .errors import (
    BernlabError,
    BranchTrackingError,
    CutViolationError,
    GammaPoleError,
    InvalidProblemError,
    NonConvergenceError,
    PrecisionBudgetError,
    QuadratureError,
)
from .precision import DEFAULT_CONFIG, PrecisionConfig, as_mpf
from .specialfn import (
    DensitySpec,
    SignedLog,
    cauchy_boundary,
    cauchy_integral,
    gamma_density,
    gamma_value,
    gauss_legendre_nodes,
    hilbert_grid,
    integrate_finite,
    integrate_finite_err,
    integrate_halfline,
    log_gamma,
)
from .remez import (
    MinimaxProblem,
    MinimaxSolution,
    ProblemKind,
    build_akhiezer_problem,
    build_power_problem,
    build_sgn_problem,
    clenshaw,
    eval_solution,
    reduced_deviation,
    solve,
)
from .conformal import (
    ConformalSample,
    MapConstants,
    far_offset_closed,
    far_offset_far_field,
    far_offset_integral,
    limit_constants,
    limit_density,
    limit_map,
    limit_map_boundary,
    phase_density,
    power_limit_profile,
    sgn_limit_profile,
    slit_map,
    slit_map_boundary,
    slit_map_zero,
    tooth_density,
)
from .asymptotics import (
    AsymptoticsReport,
    abs_gamma,
    akhiezer_a_from_b,
    akhiezer_b_from_a,
    akhiezer_convert,
    compare,
    predict_akhiezer_error,
    predict_power_error,
    predict_power_error_alt,
    predict_slit_height,
    slit_height_from_error,
)
from .curveverify import (
    PhaseTrace,
    ProfileDistanceRow,
    SignPatternReport,
    curve_residuals,
    profile_convergence,
    reconstruct_phase,
    sign_pattern_check,
)
from .conjecture import (
    ConjectureState,
    phase_residual,
    refinement_ratio,
    solve_phase_equation,
)

__version__ = "0.1.0"

__all__ = [
    "BernlabError",
    "BranchTrackingError",
    "CutViolationError",
    "GammaPoleError",
    "InvalidProblemError",
    "NonConvergenceError",
    "PrecisionBudgetError",
    "QuadratureError",
    "DEFAULT_CONFIG",
    "PrecisionConfig",
    "as_mpf",
    "DensitySpec",
    "SignedLog",
    "cauchy_boundary",
    "cauchy_integral",
    "gamma_density",
    "gamma_value",
    "gauss_legendre_nodes",
    "hilbert_grid",
    "integrate_finite",
    "integrate_finite_err",
    "integrate_halfline",
    "log_gamma",
    "MinimaxProblem",
    "MinimaxSolution",
    "ProblemKind",
    "build_akhiezer_problem",
    "build_power_problem",
    "build_sgn_problem",
    "clenshaw",
    "eval_solution",
    "reduced_deviation",
    "solve",
    "ConformalSample",
    "MapConstants",
    "far_offset_closed",
    "far_offset_far_field",
    "far_offset_integral",
    "limit_constants",
    "limit_density",
    "limit_map",
    "limit_map_boundary",
    "phase_density",
    "power_limit_profile",
    "sgn_limit_profile",
    "slit_map",
    "slit_map_boundary",
    "slit_map_zero",
    "tooth_density",
    "AsymptoticsReport",
    "abs_gamma",
    "akhiezer_a_from_b",
    "akhiezer_b_from_a",
    "akhiezer_convert",
    "compare",
    "predict_akhiezer_error",
    "predict_power_error",
    "predict_power_error_alt",
    "predict_slit_height",
    "slit_height_from_error",
    "PhaseTrace",
    "ProfileDistanceRow",
    "SignPatternReport",
    "curve_residuals",
    "profile_convergence",
    "reconstruct_phase",
    "sign_pattern_check",
    "ConjectureState",
    "phase_residual",
    "refinement_ratio",
    "solve_phase_equation",
    "__version__",
]
