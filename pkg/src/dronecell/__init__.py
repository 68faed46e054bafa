"""Drone-cell placement engine: ATG channel, exact 3-D placement, MC harness."""

from .channel import (
    ENVIRONMENTS,
    ChannelConfig,
    Environment,
    coverage_radius,
    free_space_path_loss,
    los_probability,
    optimal_altitude,
    path_loss,
)
from .experiment import (
    MULTI_TENANCY_DMF,
    MULTI_TENANCY_NO_FAIRNESS,
    POLICIES,
    SINGLE_TENANCY,
    ExperimentConfig,
    ExperimentSummary,
    SummaryRow,
    default_experiment_config,
    run_experiment,
    run_policy,
)
from .scenario import (
    Assignment,
    ObjectiveWeights,
    PlacementRegion,
    Scenario,
    ScenarioProfile,
    TenancyTargets,
    User,
    generate_scenario,
    mvno_counts,
    validate,
)
from .solver import (
    InfeasibleRegionError,
    ResourceGuardError,
    SolveResult,
    SolverError,
    TermBreakdown,
    UnsupportedConfigurationError,
    brute_force,
    covered_set,
    objective_value,
    select_users,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "ENVIRONMENTS",
    "ChannelConfig",
    "Environment",
    "coverage_radius",
    "free_space_path_loss",
    "los_probability",
    "optimal_altitude",
    "path_loss",
    "Assignment",
    "ObjectiveWeights",
    "PlacementRegion",
    "Scenario",
    "ScenarioProfile",
    "TenancyTargets",
    "User",
    "generate_scenario",
    "mvno_counts",
    "validate",
    "InfeasibleRegionError",
    "ResourceGuardError",
    "SolveResult",
    "SolverError",
    "TermBreakdown",
    "UnsupportedConfigurationError",
    "brute_force",
    "covered_set",
    "objective_value",
    "select_users",
    "solve",
    "MULTI_TENANCY_DMF",
    "MULTI_TENANCY_NO_FAIRNESS",
    "POLICIES",
    "SINGLE_TENANCY",
    "ExperimentConfig",
    "ExperimentSummary",
    "SummaryRow",
    "default_experiment_config",
    "run_experiment",
    "run_policy",
    "__version__",
]
