"""Structure-preserving integrators for Lie-Poisson systems with
double-bracket dissipation, instantiated on the rigid body.

The discrete update transports the momentum by exact rotations, so the
momentum-sphere radius (the Casimir) is conserved to round-off while the
energy decays monotonically toward the stable relative equilibria.
"""

from .dynamics import (
    DissipationMetric,
    InertiaModel,
    casimir,
    energy,
    energy_rate,
    forced_field,
    lagrangian,
    momentum_of,
    phi,
    velocity_of,
)
from .errors import (
    BranchAmbiguity,
    DegenerateSpectrum,
    MissingIncrements,
    NoConvergence,
    NotDegenerate,
    NotSkew,
    StepFailure,
    StepSizeUnderflow,
    UnknownScenario,
)
from .harness import (
    DEFAULT_CONVERGENCE_H,
    SCENARIO_NAMES,
    ConvergenceResult,
    MethodMetrics,
    MetricsReport,
    ScenarioConfig,
    builtin_scenario,
    compare_methods,
    convergence_study,
    distance_to_great_circle,
    distance_to_limit_points,
    run_scenario,
)
from .integrators import (
    STEPPER_NAMES,
    StepperKind,
    TrajectoryRecord,
    ddb_step,
    ddb_symmetric_step,
    integrate,
    lobatto3c_step,
    mv_step,
    reconstruct_attitude,
    reference_integrate,
    rk4_step,
    stepper_from_name,
)
from .retractions import RetractionKind, cayley, dtau_inv_dual, exponential, tau
from .so3 import ad_star, cay_so3, coadjoint, exp_so3, hat, vee
from .solvers import NewtonConfig, solve_momentum_to_velocity, solve_mv_group

__version__ = "0.1.0"

__all__ = [
    "BranchAmbiguity",
    "ConvergenceResult",
    "DEFAULT_CONVERGENCE_H",
    "DegenerateSpectrum",
    "DissipationMetric",
    "InertiaModel",
    "MethodMetrics",
    "MetricsReport",
    "MissingIncrements",
    "NewtonConfig",
    "NoConvergence",
    "NotDegenerate",
    "NotSkew",
    "RetractionKind",
    "SCENARIO_NAMES",
    "STEPPER_NAMES",
    "ScenarioConfig",
    "StepFailure",
    "StepSizeUnderflow",
    "StepperKind",
    "TrajectoryRecord",
    "UnknownScenario",
    "ad_star",
    "builtin_scenario",
    "casimir",
    "cay_so3",
    "cayley",
    "coadjoint",
    "compare_methods",
    "convergence_study",
    "ddb_step",
    "ddb_symmetric_step",
    "distance_to_great_circle",
    "distance_to_limit_points",
    "dtau_inv_dual",
    "energy",
    "energy_rate",
    "exp_so3",
    "exponential",
    "forced_field",
    "hat",
    "integrate",
    "lagrangian",
    "lobatto3c_step",
    "momentum_of",
    "mv_step",
    "phi",
    "reconstruct_attitude",
    "reference_integrate",
    "rk4_step",
    "run_scenario",
    "solve_momentum_to_velocity",
    "solve_mv_group",
    "stepper_from_name",
    "tau",
    "vee",
    "velocity_of",
]
