"""
Unconstrained problems 271, 289 and 293 of Schittkowski's 1987 collection
"More Test Examples for Nonlinear Programming Codes".

Each problem carries the collection's standard starting point. The published
values f(x0) and f(x*) are pinned in SCHITTKOWSKI_REFERENCE and checked by the
test suite.
"""
from typing import Callable, Dict

import numpy as np
from loguru import logger

from noisytr.problems.objective import Objective, UnsupportedProblemError


class Problem271(Objective):
    """f(x) = sum_{i=1}^{6} (16 - i)(x_i - 1)^2."""

    def __init__(self):
        super().__init__(
            "s271", 6,
            known_minimizer=np.ones(6),
            known_min_value=0.0,
            default_start=np.zeros(6),
        )
        self._w = 16.0 - np.arange(1, 7, dtype=float)

    def value(self, x: np.ndarray) -> float:
        d = np.asarray(x, dtype=float) - 1.0
        return float(np.sum(self._w * d * d))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return 2.0 * self._w * (np.asarray(x, dtype=float) - 1.0)

    def hessian(self, x: np.ndarray) -> np.ndarray:
        return np.diag(2.0 * self._w)


class Problem289(Objective):
    """f(x) = 1 - exp(-sum x_i^2 / 60), n = 30."""

    def __init__(self):
        i = np.arange(1, 31, dtype=float)
        x0 = (-1.0) ** i * (1.0 + i / 30.0)
        super().__init__(
            "s289", 30,
            known_minimizer=np.zeros(30),
            known_min_value=0.0,
            default_start=x0,
        )

    def value(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        return float(1.0 - np.exp(-(x @ x) / 60.0))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.exp(-(x @ x) / 60.0) * x / 30.0

    def hessian(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        e = np.exp(-(x @ x) / 60.0)
        return e * (np.eye(x.size) / 30.0 - np.outer(x, x) / 900.0)


class Problem293(Objective):
    """f(x) = (sum_{i=1}^{50} i x_i^2)^2."""

    def __init__(self):
        super().__init__(
            "s293", 50,
            known_minimizer=np.zeros(50),
            known_min_value=0.0,
            default_start=np.ones(50),
        )
        self._w = np.arange(1, 51, dtype=float)

    def value(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        q = float(np.sum(self._w * x * x))
        return q * q

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        q = float(np.sum(self._w * x * x))
        return 4.0 * q * self._w * x

    def hessian(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        wx = self._w * x
        q = float(np.sum(wx * x))
        return 4.0 * q * np.diag(self._w) + 8.0 * np.outer(wx, wx)


_SCHITTKOWSKI: Dict[int, Callable[[], Objective]] = {
    271: Problem271,
    289: Problem289,
    293: Problem293,
}

# published f(x0) and f(x*)
SCHITTKOWSKI_REFERENCE: Dict[int, Dict[str, float]] = {
    271: {"f_start": 75.0, "f_opt": 0.0},
    289: {"f_start": 0.69631, "f_opt": 0.0},
    293: {"f_start": 1625625.0, "f_opt": 0.0},
}


def schittkowski_problem(problem_id: int) -> Objective:
    if problem_id not in _SCHITTKOWSKI:
        supported = ", ".join(str(k) for k in sorted(_SCHITTKOWSKI))
        error_msg = f"Schittkowski problem {problem_id} is not implemented (supported: {supported})"
        logger.error(f"[PROBLEMS] {error_msg}")
        raise UnsupportedProblemError(error_msg)
    return _SCHITTKOWSKI[problem_id]()
