import math

import numpy as np
from loguru import logger
from pydantic import BaseModel

from noisytr.errors import EvaluationError
from noisytr.noise.noise_model import NoiseSpec
from noisytr.noise.noise_stream import NoiseStream
from noisytr.optim.driver_model import IterationRecord, Trace, TrustRegionConfig
from noisytr.optim.quadratic_model import DimensionMismatchError, QuadraticModel
from noisytr.optim.subproblem import SubproblemSolution, solve_subproblem
from noisytr.problems.objective import Objective


class RadiusUpdate(BaseModel):
    new_delta: float
    accept: bool


def acceptance_ratio(f_noisy_old: float, f_noisy_new: float, pred_red: float, cfg: TrustRegionConfig) -> float:
    """
    Actual-to-predicted reduction ratio.

    The noisy variant adds r * eps_f to numerator and denominator, with
    r = 2 / (1 - c2). The classical variant is the eps_f = 0 case. An exactly
    zero denominator gives -inf.
    """
    values = (f_noisy_old, f_noisy_new, pred_red)
    if not all(math.isfinite(v) for v in values):
        error_msg = f"non-finite input to acceptance ratio: {values}"
        logger.error(f"[DRIVER] {error_msg}")
        raise EvaluationError(error_msg)

    actual = f_noisy_old - f_noisy_new
    shift = cfg.r * cfg.ratio_eps_f()
    if shift != 0.0:
        actual += shift
        pred_red += shift
    if pred_red == 0.0:
        logger.warning("[DRIVER] zero predicted reduction, ratio set to -inf")
        return -math.inf
    return actual / pred_red


def radius_and_step_update(rho: float, delta: float, step: SubproblemSolution, cfg: TrustRegionConfig) -> RadiusUpdate:
    if rho < cfg.c1:
        new_delta = delta / cfg.nu
    elif rho > cfg.c2 and (step.boundary_hit or not cfg.require_boundary_for_increase):
        new_delta = cfg.nu * delta
    else:
        new_delta = delta
    return RadiusUpdate(new_delta=new_delta, accept=bool(rho > cfg.c0))


def _finite_or_raise(what: str, value) -> None:
    if not np.all(np.isfinite(value)):
        raise EvaluationError(f"non-finite {what}")


def run(obj: Objective, noise: NoiseSpec, cfg: TrustRegionConfig, x0: np.ndarray, keep_iterates: bool = False) -> Trace:
    """
    Run the trust-region iteration for cfg.max_iters iterations.

    The model at x_k is built from f~(x_k), g~(x_k) = g + delta_g and
    B~_k = H(x_k) + delta_B. Noise for the gradient and Hessian at iteration
    k, and for the trial value f~(x_k + p_k), is keyed by the iteration index,
    so runs sharing a seed see identical noise whatever the iterates. True
    values are recorded for diagnostics only.

    Args:
        obj: Objective to minimise
        noise: Injected noise levels, family and seed
        cfg: Trust-region parameters
        x0: Starting point
        keep_iterates: Also keep iterates and trial points in the trace

    Returns:
        Trace of cfg.max_iters records, or a partial trace with error set
        when a non-finite value is met
    """
    x = np.array(x0, dtype=float).reshape(-1)
    if x.size != obj.dimension:
        error_msg = f"x0 has length {x.size}, {obj.name} has dimension {obj.dimension}"
        logger.error(f"[DRIVER] {error_msg}")
        raise DimensionMismatchError(error_msg)

    cfg = cfg.resolved(noise)
    n = obj.dimension
    stream = NoiseStream(noise)
    trace = Trace(
        problem=obj.name,
        config=cfg,
        noise=noise,
        x0=x.copy(),
        iterates=[] if keep_iterates else None,
        trial_points=[] if keep_iterates else None,
    )

    delta = cfg.delta0
    f_true = f_noisy = math.nan
    try:
        _finite_or_raise("starting point", x)
        f_true = obj.value(x)
        f_noisy = f_true + stream.function_noise(counter=0)
        _finite_or_raise("function value at x0", f_noisy)

        for k in range(cfg.max_iters):
            g_true = obj.gradient(x)
            g_noisy = g_true + stream.gradient_noise(n)
            B = obj.hessian(x) + stream.hessian_noise(n)
            _finite_or_raise(f"gradient at iteration {k}", g_noisy)
            _finite_or_raise(f"Hessian at iteration {k}", B)

            model = QuadraticModel(f_noisy=f_noisy, g_noisy=g_noisy, B=B)
            step = solve_subproblem(model, delta, cfg.solver, cfg.cg_tol)

            x_trial = x + step.p
            _finite_or_raise(f"trial point at iteration {k}", x_trial)
            f_trial_true = obj.value(x_trial)
            f_trial_noisy = f_trial_true + stream.function_noise(counter=k + 1)

            rho = acceptance_ratio(f_noisy, f_trial_noisy, step.predicted_reduction, cfg)
            update = radius_and_step_update(rho, delta, step, cfg)

            trace.records.append(IterationRecord(
                k=k,
                f_true=f_true,
                f_noisy=f_noisy,
                grad_norm_true=float(np.linalg.norm(g_true)),
                grad_norm_noisy=model.g_norm,
                delta=delta,
                rho=rho,
                accepted=update.accept,
                step_norm=step.step_norm,
                dist_to_solution=obj.distance_to_solution(x),
            ))
            if keep_iterates:
                trace.iterates.append(x.copy())
                trace.trial_points.append(x_trial.copy())
            logger.debug(
                f"[DRIVER] k={k} f~={f_noisy:.6e} |g|={float(np.linalg.norm(g_true)):.3e} "
                f"delta={delta:.3e} rho={rho:.4f} accepted={update.accept}"
            )

            if update.accept:
                x, f_true, f_noisy = x_trial, f_trial_true, f_trial_noisy
            delta = update.new_delta
            stream.advance()
    except (EvaluationError, ValueError) as e:
        trace.error = str(e)
        logger.warning(f"[DRIVER] {obj.name} run aborted after {len(trace.records)} iterations: {e}")

    trace.final_x = x
    trace.final_f_noisy = f_noisy
    trace.final_delta = delta
    if trace.records:
        logger.info(
            f"[DRIVER] {obj.name} {cfg.ratio_variant.value} seed={noise.seed}: "
            f"{len(trace.records)} iterations, final f={f_true:.6e}, final delta={delta:.3e}, "
            f"min |g|={float(np.min(trace.series('grad_norm_true'))):.3e}"
        )
    return trace
