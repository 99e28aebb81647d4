from noisytr.problems.objective import Objective, InvalidDimensionError, UnsupportedProblemError
from noisytr.problems.test_functions import quadratic_problem, tridiagonal_problem
from noisytr.problems.schittkowski import schittkowski_problem, SCHITTKOWSKI_REFERENCE
from noisytr.problems.finite_difference import finite_difference_check, FiniteDifferenceReport
from noisytr.problems.registry import get_problem

__all__ = [
    "Objective",
    "InvalidDimensionError",
    "UnsupportedProblemError",
    "quadratic_problem",
    "tridiagonal_problem",
    "schittkowski_problem",
    "SCHITTKOWSKI_REFERENCE",
    "finite_difference_check",
    "FiniteDifferenceReport",
    "get_problem",
]
