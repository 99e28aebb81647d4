from noisytr.theory.constants import (
    DiagnosticError,
    TheoryConstants,
    accepted_increase_bound,
    compute_constants,
    critical_region_radius,
    curvature_bound,
    estimate_M,
    estimate_lipschitz,
    level_set_bound,
    noisy_reduction_floor,
    r_diagnostic,
    rho_distance_bound,
)
from noisytr.theory.diagnostics import (
    accepted_increase_violations,
    contained,
    min_true_gradient,
    monotone_violations,
    radius_increase_triggers,
    radius_increase_violations,
    trajectory_constants,
)
