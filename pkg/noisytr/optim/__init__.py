from noisytr.optim.quadratic_model import (
    DimensionMismatchError,
    QuadraticModel,
    cauchy_decrease,
    evaluate,
    predicted_reduction,
)
from noisytr.optim.subproblem import (
    SubproblemSolution,
    SubproblemSolver,
    cauchy_step,
    dogleg,
    newton_cg,
    solve_subproblem,
)
from noisytr.optim.driver_model import IterationRecord, RatioVariant, Trace, TrustRegionConfig
from noisytr.optim.driver import RadiusUpdate, acceptance_ratio, radius_and_step_update, run
