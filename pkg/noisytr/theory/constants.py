import math
from typing import Iterable, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from noisytr.errors import ConfigError, NoisyTRError
from noisytr.problems.objective import Objective, UnsupportedProblemError
from noisytr.utils.linalg import spectral_norm


class DiagnosticError(NoisyTRError):
    pass


class TheoryConstants(BaseModel):
    """Constants of the convergence analysis for given noise levels and parameters."""
    eps_f: float
    eps_g: float
    c0: float
    c2: float
    nu: float
    L: Optional[float] = Field(None, description="Lipschitz constant of the gradient")
    L_B: Optional[float] = Field(None, description="Bound on ||B~_k||")
    M: float = Field(..., description="(L_B + L) / 2")
    r: float
    mu: float
    eta: float
    beta: float
    gamma: float
    delta_bar: float = Field(..., description="gamma / (r M)")
    c1_radius: float = Field(..., description="(r + 1) eps_g + beta / 2")
    G: Optional[float] = Field(None, description="Level-set constant, needs L")


def _level_set_G(r: float, M: float, gamma: float, L: float, eps_g: float, nu: float) -> float:
    factor = nu ** 2 * gamma / ((nu - 1.0) * r * M)
    return ((r + 1.0) * eps_g + gamma + L * factor) * factor


def compute_constants(
    eps_f: float,
    eps_g: float,
    c0: float,
    c2: float,
    nu: float,
    M: float,
    L: Optional[float] = None,
    L_B: Optional[float] = None,
) -> TheoryConstants:
    """
    Evaluate r, beta, eta, mu, gamma, delta_bar and the critical-region radius.

    beta = sqrt((r eps_g)^2 + 8 nu r^2 (1/c0 - 1) M eps_f),
    eta = (beta - r eps_g) / 2, mu = eps_g / 2, gamma = eta + mu.

    Raises:
        ConfigError: parameters out of range
    """
    checks = [
        (0.0 < c0 <= c2 < 1.0, "c0/c2", f"need 0 < c0 <= c2 < 1, got c0={c0}, c2={c2}"),
        (nu > 1.0, "nu", f"need nu > 1, got {nu}"),
        (M > 0.0 and math.isfinite(M), "M", f"need finite M > 0, got {M}"),
        (eps_f >= 0.0 and eps_g >= 0.0, "eps", f"noise bounds must be nonnegative, got eps_f={eps_f}, eps_g={eps_g}"),
    ]
    for ok, field, message in checks:
        if not ok:
            logger.error(f"[THEORY] {field}: {message}")
            raise ConfigError(message, field=field)

    r = 2.0 / (1.0 - c2)
    beta = math.sqrt((r * eps_g) ** 2 + 8.0 * nu * r ** 2 * (1.0 / c0 - 1.0) * M * eps_f)
    eta = 0.5 * (beta - r * eps_g)
    mu = 0.5 * eps_g
    gamma = eta + mu
    return TheoryConstants(
        eps_f=eps_f,
        eps_g=eps_g,
        c0=c0,
        c2=c2,
        nu=nu,
        L=L,
        L_B=L_B,
        M=M,
        r=r,
        mu=mu,
        eta=eta,
        beta=beta,
        gamma=gamma,
        delta_bar=gamma / (r * M),
        c1_radius=(r + 1.0) * eps_g + 0.5 * beta,
        G=None if L is None else _level_set_G(r, M, gamma, L, eps_g, nu),
    )


def critical_region_radius(tc: TheoryConstants, eps_g: float) -> float:
    return (tc.r + 1.0) * eps_g + 0.5 * tc.beta


def level_set_bound(tc: TheoryConstants, L: float, eps_f: float, eps_g: float, c0: float, nu: float) -> float:
    """Width 2 eps_f + max(G, r (1 - c0) eps_f) of the function-value band the iterates stay in."""
    G = _level_set_G(tc.r, tc.M, tc.gamma, L, eps_g, nu)
    return 2.0 * eps_f + max(G, tc.r * (1.0 - c0) * eps_f)


def accepted_increase_bound(r: float, c0: float, eps_f: float) -> float:
    """An accepted step raises f~ by less than r (1 - c0) eps_f."""
    return r * (1.0 - c0) * eps_f


def noisy_reduction_floor(tc: TheoryConstants) -> float:
    """Guaranteed f~ decrease c0 (mu beta + mu^2) / (2 nu r M) of accepted steps away from the critical region."""
    return tc.c0 * (tc.mu * tc.beta + tc.mu ** 2) / (2.0 * tc.nu * tc.r * tc.M)


def rho_distance_bound(
    M: float, delta: float, g_norm_noisy: float, B_norm: float, eps_f: float, eps_g: float, r: float
) -> float:
    """Upper bound on |rho - 1| for the relaxed ratio."""
    reach = delta if B_norm == 0.0 else min(delta, g_norm_noisy / B_norm)
    denominator = 0.5 * g_norm_noisy * reach + r * eps_f
    if denominator == 0.0:
        return math.inf
    return (M * delta ** 2 + eps_g * delta + 2.0 * eps_f) / denominator


def estimate_M(obj: Objective) -> float:
    """
    Spectral norm of the Hessian at the known minimizer.

    Raises:
        UnsupportedProblemError: objective has no known minimizer
        DiagnosticError: the Hessian vanishes there, so no positive M exists
    """
    if obj.known_minimizer is None:
        error_msg = f"{obj.name} has no known minimizer, cannot estimate M"
        logger.error(f"[THEORY] {error_msg}")
        raise UnsupportedProblemError(error_msg)
    M = spectral_norm(obj.hessian(obj.known_minimizer), tol=1e-8)
    if M == 0.0:
        error_msg = f"Hessian of {obj.name} vanishes at the minimizer, M is not positive"
        logger.error(f"[THEORY] {error_msg}")
        raise DiagnosticError(error_msg)
    logger.debug(f"[THEORY] {obj.name}: M = {M:.6e}")
    return M


def curvature_bound(obj: Objective, eps_B: float) -> float:
    """(L_B + L) / 2 with L = ||H(x*)|| and L_B = L + eps_B."""
    return estimate_M(obj) + 0.5 * eps_B


def estimate_lipschitz(obj: Objective, points: Iterable[np.ndarray]) -> float:
    """Largest spectral Hessian norm over the given points."""
    norms = [float(np.max(np.abs(np.linalg.eigvalsh(obj.hessian(np.asarray(x, dtype=float)))))) for x in points]
    if not norms:
        raise DiagnosticError("no sample points for the Lipschitz estimate")
    return max(norms)


def r_diagnostic(c_bound: float, min_grad_norms: Sequence[float], expected_count: int = 10) -> float:
    """
    log10(c_bound / sum of per-seed minima).

    The sum, not the mean, is used; the mean would add exactly 1.
    """
    minima = [float(v) for v in min_grad_norms]
    if len(minima) != expected_count:
        error_msg = f"expected {expected_count} per-seed minima, got {len(minima)}"
        logger.error(f"[THEORY] {error_msg}")
        raise DiagnosticError(error_msg)
    if not c_bound > 0.0:
        error_msg = f"bound must be positive, got {c_bound}"
        logger.error(f"[THEORY] {error_msg}")
        raise DiagnosticError(error_msg)
    if any(not v > 0.0 or not math.isfinite(v) for v in minima):
        error_msg = f"R is undefined for nonpositive or non-finite minima: {minima}"
        logger.error(f"[THEORY] {error_msg}")
        raise DiagnosticError(error_msg)
    return math.log10(c_bound / math.fsum(minima))
