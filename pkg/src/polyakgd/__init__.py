"""Gradient descent with Polyak step sizes, with every guarantee checked.

The package is organized bottom-up:

    objectives   synthetic convex objectives with exact minimizer metadata
    schedules    step size rules (exact Polyak, lower-bound Polyak, baselines)
    optimizer    the descent loop, per-step logging, the adaptive estimator
    bounds       worst-case bound tables and per-trajectory inequality audits
    config       TOML experiment configuration
    harness      experiment runner, artifact emission, verification suite
    cli          the ``polyakgd`` command
"""

from .bounds import (
    BoundParams,
    BoundReport,
    DescentAudit,
    ModuliAudit,
    NormalizedDistanceAudit,
    Violation,
    check_descent_condition,
    check_distance_recursion,
    check_geometric_contraction,
    check_moduli_inequalities,
    check_normalized_distance_decay,
    contraction_bound,
    polyak_bound,
)
from .config import (
    ConfigError,
    ExperimentConfig,
    build_config,
    load_config,
    parse_config,
)
from .harness import (
    ExperimentReport,
    compare_schedules,
    emit_report,
    emit_trajectory_csv,
    read_trajectory_csv,
    report_json,
    report_text,
    run_experiment,
    trajectory_svg,
    verify_suite,
)
from .objectives import (
    KINDS,
    Objective,
    Quadratic,
    ScaledNorm,
    SingularQuadratic,
    StronglyConvexWithL1,
    check_gradient_fd,
    make_objective,
)
from .optimizer import (
    AdaptiveResult,
    RunConfig,
    RunResult,
    TrajectoryRecord,
    adaptive_polyak,
    epochs_for_gap,
    gd_step,
    run_gd,
)
from .schedules import (
    SCHEDULE_NAMES,
    Constant,
    InverseSqrtT,
    InverseT,
    LowerBoundError,
    PolyakExact,
    PolyakLowerBound,
    rule_from_name,
    step_size,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveResult",
    "BoundParams",
    "BoundReport",
    "ConfigError",
    "Constant",
    "DescentAudit",
    "ExperimentConfig",
    "ExperimentReport",
    "InverseSqrtT",
    "InverseT",
    "KINDS",
    "LowerBoundError",
    "ModuliAudit",
    "NormalizedDistanceAudit",
    "Objective",
    "PolyakExact",
    "PolyakLowerBound",
    "Quadratic",
    "RunConfig",
    "RunResult",
    "SCHEDULE_NAMES",
    "ScaledNorm",
    "SingularQuadratic",
    "StronglyConvexWithL1",
    "TrajectoryRecord",
    "Violation",
    "adaptive_polyak",
    "build_config",
    "check_descent_condition",
    "check_distance_recursion",
    "check_geometric_contraction",
    "check_gradient_fd",
    "check_moduli_inequalities",
    "check_normalized_distance_decay",
    "compare_schedules",
    "contraction_bound",
    "emit_report",
    "emit_trajectory_csv",
    "epochs_for_gap",
    "gd_step",
    "load_config",
    "make_objective",
    "parse_config",
    "polyak_bound",
    "read_trajectory_csv",
    "report_json",
    "report_text",
    "rule_from_name",
    "run_experiment",
    "run_gd",
    "step_size",
    "trajectory_svg",
    "verify_suite",
]
