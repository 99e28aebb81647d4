"""Checks of the analysis' guarantees against recorded traces."""
from typing import List

import numpy as np
from loguru import logger

from noisytr.optim.driver_model import Trace
from noisytr.problems.objective import Objective
from noisytr.theory.constants import (
    DiagnosticError,
    TheoryConstants,
    accepted_increase_bound,
    compute_constants,
    estimate_lipschitz,
)


def _noisy_values_after(trace: Trace) -> List[float]:
    nxt = [rec.f_noisy for rec in trace.records[1:]]
    nxt.append(trace.final_f_noisy)
    return nxt


def accepted_increase_violations(trace: Trace) -> List[int]:
    """Accepted iterations whose f~ increase reaches r (1 - c0) eps_f."""
    cfg = trace.config
    bound = accepted_increase_bound(cfg.r, cfg.c0, cfg.ratio_eps_f())
    violations = []
    for rec, f_next in zip(trace.records, _noisy_values_after(trace)):
        if rec.accepted and not (rec.f_noisy - f_next > -bound):
            violations.append(rec.k)
    if violations:
        logger.warning(f"[THEORY] accepted-step increase bound violated at {violations}")
    return violations


def monotone_violations(trace: Trace) -> List[int]:
    """Accepted iterations where f~ did not decrease."""
    return [
        rec.k
        for rec, f_next in zip(trace.records, _noisy_values_after(trace))
        if rec.accepted and not f_next < rec.f_noisy
    ]


def radius_increase_violations(trace: Trace, tc: TheoryConstants) -> List[int]:
    """
    Iterations with ||g~_k|| > r eps_g + gamma and delta_k <= gamma / (r M)
    whose ratio did not exceed c2.
    """
    threshold = tc.r * tc.eps_g + tc.gamma
    violations = [
        rec.k
        for rec in trace.records
        if rec.grad_norm_noisy > threshold and rec.delta <= tc.delta_bar and not rec.rho > trace.config.c2
    ]
    if violations:
        logger.warning(f"[THEORY] radius-increase guarantee violated at {violations}")
    return violations


def radius_increase_triggers(trace: Trace, tc: TheoryConstants) -> int:
    threshold = tc.r * tc.eps_g + tc.gamma
    return sum(1 for rec in trace.records if rec.grad_norm_noisy > threshold and rec.delta <= tc.delta_bar)


def trajectory_constants(obj: Objective, trace: Trace) -> TheoryConstants:
    """
    Constants with L taken over the iterates and trial points of a trace
    and L_B = L + eps_B.
    """
    if not trace.iterates:
        raise DiagnosticError("trace was recorded without iterates")
    points = list(trace.iterates) + list(trace.trial_points or [])
    L = estimate_lipschitz(obj, points)
    L_B = L + trace.noise.eps_B
    cfg = trace.config
    return compute_constants(
        trace.noise.eps_f, trace.noise.eps_g, cfg.c0, cfg.c2, cfg.nu, 0.5 * (L + L_B), L=L, L_B=L_B
    )


def min_true_gradient(trace: Trace) -> float:
    return float(np.min(trace.series("grad_norm_true")))


def contained(trace: Trace, c1_radius: float) -> bool:
    """The run came within the critical-region radius in true gradient norm."""
    return bool(trace.records) and min_true_gradient(trace) <= c1_radius
