import math

import numpy as np


def spectral_norm(A: np.ndarray, tol: float = 1e-10, max_iter: int = 10000, seed: int = 0) -> float:
    """
    Spectral norm of a dense symmetric matrix by power iteration.

    Tracks the estimate ||A x|| for unit x, which converges to max |eigenvalue|
    even when eigenvalues of opposite sign share the largest magnitude.
    Stops when the residual ||A x - lam x|| falls below tol * lam, or when
    the estimate stalls to relative precision tol.

    Args:
        A: Square symmetric matrix
        tol: Relative stopping tolerance
        max_iter: Iteration cap
        seed: Seed of the deterministic start vector

    Returns:
        Estimate of ||A||_2 (0.0 for the zero matrix)
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n == 0 or not np.any(A):
        return 0.0

    rng = np.random.default_rng(seed)
    x = rng.normal(size=n)
    x = x / np.linalg.norm(x)

    estimate = 0.0
    for _ in range(max_iter):
        y = A @ x
        y_norm = float(np.linalg.norm(y))
        if y_norm == 0.0:
            # x is in the nullspace; re-initialize
            x = rng.normal(size=n)
            x = x / np.linalg.norm(x)
            continue

        lam = float(x @ y)
        residual = float(np.linalg.norm(y - lam * x))
        previous, estimate = estimate, max(y_norm, estimate)
        x = y / y_norm

        if residual <= tol * y_norm or abs(estimate - previous) <= tol * estimate:
            break

    return estimate


def boundary_root(p: np.ndarray, d: np.ndarray, delta: float) -> float:
    """Positive root sigma of ||p + sigma d|| = delta, for ||p|| <= delta."""
    a = float(d @ d)
    b = 2.0 * float(p @ d)
    c = float(p @ p) - delta * delta
    disc = max(b * b - 4.0 * a * c, 0.0)
    # stable form of the larger root
    if b >= 0.0:
        denom = b + math.sqrt(disc)
        return max(0.0, -2.0 * c / denom) if denom > 0.0 else 0.0
    return max(0.0, (-b + math.sqrt(disc)) / (2.0 * a))


def symmetrize(A: np.ndarray) -> np.ndarray:
    return 0.5 * (A + A.T)
