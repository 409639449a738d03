"""Bin packing with class setups: data model, bounds, solvers, models."""

from .core import (
    BppsError,
    CostBreakdown,
    InfeasibleSolutionError,
    Instance,
    InvalidInstanceError,
    Solution,
    TrivialInstanceError,
    ValidationReport,
    Violation,
    active_classes,
    bin_load,
    check_feasible,
    make_instance,
    solution_cost,
    validate_instance,
)
from .bounds import (
    BoundsReport,
    FractionalSolution,
    bounds_report,
    fractional_solution,
    gamma,
    k_lower,
    verify_fractional,
    zeta_lp_dag,
    zeta_lp_ddag,
    zeta_lp_n,
)
from .bpp import (
    BppInstance,
    BppPacking,
    NodeLimitExceeded,
    exact_beta,
    exact_packing,
    fit_heuristic,
    heuristic_beta,
    heuristic_packing,
)
from .cha import ChaTrace, cha, k_upper
from .exact import ExactResult, branch_and_bound, brute_force
from .gen import GeneratorConfig, generate, generate_benchmark, worst_case
from .milp import MilpModel, build_model, emit_lp_file, import_solution, parse_lp_file

__version__ = "0.1.0"

__all__ = [
    "BppsError",
    "CostBreakdown",
    "InfeasibleSolutionError",
    "Instance",
    "InvalidInstanceError",
    "Solution",
    "TrivialInstanceError",
    "ValidationReport",
    "Violation",
    "active_classes",
    "bin_load",
    "check_feasible",
    "make_instance",
    "solution_cost",
    "validate_instance",
    "BoundsReport",
    "FractionalSolution",
    "bounds_report",
    "fractional_solution",
    "gamma",
    "k_lower",
    "verify_fractional",
    "zeta_lp_dag",
    "zeta_lp_ddag",
    "zeta_lp_n",
    "BppInstance",
    "BppPacking",
    "NodeLimitExceeded",
    "exact_beta",
    "exact_packing",
    "fit_heuristic",
    "heuristic_beta",
    "heuristic_packing",
    "ChaTrace",
    "cha",
    "k_upper",
    "ExactResult",
    "branch_and_bound",
    "brute_force",
    "GeneratorConfig",
    "generate",
    "generate_benchmark",
    "worst_case",
    "MilpModel",
    "build_model",
    "emit_lp_file",
    "import_solution",
    "parse_lp_file",
    "__version__",
]
