import numpy as np
import pytest

from noisytr.noise.noise_model import NoiseSpec
from noisytr.optim.driver_model import TrustRegionConfig
from noisytr.optim.quadratic_model import QuadraticModel
from noisytr.problems.objective import Objective
from noisytr.problems.test_functions import quadratic_problem, tridiagonal_problem


class SphereWithoutMinimizer(Objective):
    """x^T x with the minimizer deliberately not declared."""

    def __init__(self, n: int = 3):
        super().__init__("sphere-anon", n)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return float(x @ x)

    def gradient(self, x):
        return 2.0 * np.asarray(x, dtype=float)

    def hessian(self, x):
        return 2.0 * np.eye(self.dimension)


def random_model(rng: np.random.Generator, n: int, positive_definite: bool = False) -> QuadraticModel:
    g = rng.normal(size=n)
    A = rng.normal(size=(n, n))
    if positive_definite:
        B = A.T @ A / n + 0.1 * np.eye(n)
        B = 0.5 * (B + B.T)
    else:
        B = 0.5 * (A + A.T)
    return QuadraticModel(f_noisy=float(rng.normal()), g_noisy=g, B=B)


@pytest.fixture
def quadratic8():
    return quadratic_problem()


@pytest.fixture
def tridiag200():
    return tridiagonal_problem(200)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def default_config():
    return TrustRegionConfig()


@pytest.fixture
def noiseless():
    return NoiseSpec(family="none")


@pytest.fixture
def anon_sphere():
    return SphereWithoutMinimizer()
