from enum import Enum

import numpy as np
import scipy.linalg as linalg
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from noisytr.errors import EvaluationError
from noisytr.optim.quadratic_model import QuadraticModel, predicted_reduction
from noisytr.utils.linalg import boundary_root

BOUNDARY_RTOL = 1e-9


class SubproblemSolver(str, Enum):
    CAUCHY = "cauchy"
    DOGLEG = "dogleg"
    NEWTON_CG = "newton_cg"


class SubproblemSolution(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    p: np.ndarray = Field(..., description="Trial step")
    predicted_reduction: float = Field(..., description="m(0) - m(p)")
    boundary_hit: bool = Field(..., description="||p|| >= delta (1 - 1e-9)")
    solver: SubproblemSolver
    degenerate: bool = Field(False, description="Zero noisy gradient, zero step returned")
    fallback: bool = Field(False, description="Dogleg fell back to the Cauchy step")
    cg_iterations: int = Field(0, ge=0)

    @property
    def step_norm(self) -> float:
        return float(np.linalg.norm(self.p))


def _solution(m: QuadraticModel, p: np.ndarray, delta: float, solver: SubproblemSolver, **flags) -> SubproblemSolution:
    step_norm = float(np.linalg.norm(p))
    return SubproblemSolution(
        p=p,
        predicted_reduction=predicted_reduction(m, p),
        boundary_hit=bool(step_norm >= delta * (1.0 - BOUNDARY_RTOL)),
        solver=solver,
        **flags,
    )


def _degenerate(m: QuadraticModel, solver: SubproblemSolver) -> SubproblemSolution:
    logger.warning(f"[SUBPROBLEM] zero noisy gradient, returning zero step ({solver.value})")
    return SubproblemSolution(
        p=np.zeros(m.dimension),
        predicted_reduction=0.0,
        boundary_hit=False,
        solver=solver,
        degenerate=True,
    )


def _check_delta(delta: float) -> None:
    if not delta > 0.0:
        error_msg = f"trust-region radius must be positive, got {delta}"
        logger.error(f"[SUBPROBLEM] {error_msg}")
        raise EvaluationError(error_msg)


def cauchy_step(m: QuadraticModel, delta: float) -> SubproblemSolution:
    """
    Minimizer of the model along -g inside the region.

    tau = 1 if g^T B g <= 0, else min(||g||^3 / (delta g^T B g), 1), and
    p = -tau (delta / ||g||) g.
    """
    _check_delta(delta)
    g = m.g_noisy
    g_norm = m.g_norm
    if g_norm == 0.0:
        return _degenerate(m, SubproblemSolver.CAUCHY)

    curvature = float(g @ (m.B @ g))
    if curvature <= 0.0:
        tau = 1.0
    else:
        tau = min(g_norm ** 3 / (delta * curvature), 1.0)
    p = -(tau * delta / g_norm) * g
    return _solution(m, p, delta, SubproblemSolver.CAUCHY)


def newton_cg(m: QuadraticModel, delta: float, tol: float = 1e-8) -> SubproblemSolution:
    """
    Steihaug-Toint truncated conjugate gradient.

    Starts at p = 0 and always takes at least one CG iteration, so the first
    iterate is the Cauchy point. Stops when the residual drops below
    tol * max(1, ||g||), on negative curvature (to the boundary along the
    current direction), when an iterate would leave the region (to the
    boundary crossing), or after n iterations.

    Args:
        m: Local model
        delta: Trust-region radius, may be np.inf
        tol: Relative residual tolerance

    Returns:
        SubproblemSolution with solver newton_cg
    """
    _check_delta(delta)
    g = m.g_noisy
    B = m.B
    n = m.dimension
    g_norm = m.g_norm
    if g_norm == 0.0:
        return _degenerate(m, SubproblemSolver.NEWTON_CG)

    threshold = tol * max(1.0, g_norm)
    p = np.zeros(n)
    r = g.copy()
    d = -r
    rr = float(r @ r)

    iterations = 0
    for _ in range(n):
        iterations += 1
        Bd = B @ d
        curvature = float(d @ Bd)
        if not np.isfinite(curvature):
            error_msg = "non-finite curvature in conjugate gradient"
            logger.error(f"[SUBPROBLEM] {error_msg}")
            raise EvaluationError(error_msg)

        if curvature <= 0.0:
            # negative curvature: follow d to the boundary
            if not np.isfinite(delta):
                error_msg = "negative curvature with an unbounded trust region"
                logger.error(f"[SUBPROBLEM] {error_msg}")
                raise EvaluationError(error_msg)
            p = p + boundary_root(p, d, delta) * d
            break

        alpha = rr / curvature
        p_next = p + alpha * d
        if np.linalg.norm(p_next) >= delta:
            p = p + boundary_root(p, d, delta) * d
            break

        p = p_next
        r = r + alpha * Bd
        rr_next = float(r @ r)
        if np.sqrt(rr_next) <= threshold:
            break
        d = -r + (rr_next / rr) * d
        rr = rr_next

    if not np.all(np.isfinite(p)):
        error_msg = "non-finite step from conjugate gradient"
        logger.error(f"[SUBPROBLEM] {error_msg}")
        raise EvaluationError(error_msg)
    return _solution(m, p, delta, SubproblemSolver.NEWTON_CG, cg_iterations=iterations)


def dogleg(m: QuadraticModel, delta: float) -> SubproblemSolution:
    """Dogleg path from the Cauchy point to the Newton point; needs B positive definite."""
    _check_delta(delta)
    g = m.g_noisy
    g_norm = m.g_norm
    if g_norm == 0.0:
        return _degenerate(m, SubproblemSolver.DOGLEG)

    try:
        factor = linalg.cho_factor(m.B)
        p_newton = -linalg.cho_solve(factor, g)
        if not np.all(np.isfinite(p_newton)):
            raise linalg.LinAlgError("singular factor")
    except linalg.LinAlgError as e:
        logger.warning(f"[SUBPROBLEM] B is not positive definite ({e}), dogleg falls back to the Cauchy step")
        step = cauchy_step(m, delta)
        return step.model_copy(update={"fallback": True})

    if np.linalg.norm(p_newton) <= delta:
        return _solution(m, p_newton, delta, SubproblemSolver.DOGLEG)

    curvature = float(g @ (m.B @ g))
    p_cauchy = -(g_norm ** 2 / curvature) * g
    if np.linalg.norm(p_cauchy) >= delta:
        return _solution(m, -(delta / g_norm) * g, delta, SubproblemSolver.DOGLEG)

    leg = p_newton - p_cauchy
    s = min(boundary_root(p_cauchy, leg, delta), 1.0)
    return _solution(m, p_cauchy + s * leg, delta, SubproblemSolver.DOGLEG)


def solve_subproblem(m: QuadraticModel, delta: float, solver: SubproblemSolver = SubproblemSolver.NEWTON_CG, tol: float = 1e-8) -> SubproblemSolution:
    solver = SubproblemSolver(solver)
    if solver == SubproblemSolver.CAUCHY:
        return cauchy_step(m, delta)
    if solver == SubproblemSolver.DOGLEG:
        return dogleg(m, delta)
    return newton_cg(m, delta, tol)
