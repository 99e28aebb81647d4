import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from noisytr.errors import EvaluationError
from noisytr.problems.objective import Objective


class FiniteDifferenceReport(BaseModel):
    """Max-norm relative errors of analytic derivatives against central differences."""
    grad_rel_err: float = Field(..., description="||g_fd - g||_inf / max(1, ||g||_inf)")
    hess_rel_err: float = Field(..., description="||H_fd - H||_max / max(1, ||H||_max)")


def _rel_err(approx: np.ndarray, exact: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(exact))))
    return float(np.max(np.abs(approx - exact))) / scale


def _finite(value, what: str) -> None:
    if not np.all(np.isfinite(value)):
        error_msg = f"non-finite {what} encountered during finite differencing"
        logger.error(f"[PROBLEMS] {error_msg}")
        raise EvaluationError(error_msg)


def finite_difference_check(obj: Objective, x: np.ndarray, h: float = 1e-5) -> FiniteDifferenceReport:
    """
    Compare analytic gradient and Hessian with central differences.

    The gradient is differenced from function values, the Hessian from
    analytic gradients. Coordinate i uses the step h * max(1, |x_i|).

    Args:
        obj: Objective under test
        x: Evaluation point
        h: Difference step, must be positive

    Returns:
        FiniteDifferenceReport with the two relative errors
    """
    x = np.asarray(x, dtype=float)
    if not h > 0.0 or not np.isfinite(h):
        error_msg = f"finite-difference step must be positive and finite, got {h}"
        logger.error(f"[PROBLEMS] {error_msg}")
        raise EvaluationError(error_msg)
    _finite(x, "point")

    n = obj.dimension
    g = obj.gradient(x)
    H = obj.hessian(x)
    _finite(g, "gradient")
    _finite(H, "Hessian")

    g_fd = np.empty(n)
    H_fd = np.empty((n, n))
    for i in range(n):
        step = h * max(1.0, abs(float(x[i])))
        e = np.zeros(n)
        e[i] = step
        f_plus, f_minus = obj.value(x + e), obj.value(x - e)
        _finite([f_plus, f_minus], "function value")
        g_fd[i] = (f_plus - f_minus) / (2.0 * step)
        g_plus, g_minus = obj.gradient(x + e), obj.gradient(x - e)
        _finite(g_plus, "gradient")
        _finite(g_minus, "gradient")
        H_fd[:, i] = (g_plus - g_minus) / (2.0 * step)

    report = FiniteDifferenceReport(grad_rel_err=_rel_err(g_fd, g), hess_rel_err=_rel_err(H_fd, H))
    logger.debug(f"[PROBLEMS] {obj.name}: grad_rel_err={report.grad_rel_err:.3e}, hess_rel_err={report.hess_rel_err:.3e}")
    return report
