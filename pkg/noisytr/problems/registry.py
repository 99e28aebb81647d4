from loguru import logger

from noisytr.problems.objective import Objective, UnsupportedProblemError
from noisytr.problems.schittkowski import schittkowski_problem
from noisytr.problems.test_functions import quadratic_problem, tridiagonal_problem

PROBLEM_IDS = ("quadratic8", "tridiag:<N>", "s271", "s289", "s293")


def get_problem(problem_id: str) -> Objective:
    """
    Resolve a problem id to an objective.

    Accepted ids: quadratic8, tridiag (N = 200), tridiag:<N>, s271, s289, s293.
    """
    pid = problem_id.strip().lower()
    if pid == "quadratic8":
        return quadratic_problem()
    if pid == "tridiag":
        return tridiagonal_problem(200)
    if pid.startswith("tridiag:"):
        size = pid.split(":", 1)[1]
        try:
            N = int(size)
        except ValueError as e:
            error_msg = f"Invalid tridiagonal size '{size}' in problem id '{problem_id}'"
            logger.error(f"[PROBLEMS] {error_msg}")
            raise UnsupportedProblemError(error_msg) from e
        return tridiagonal_problem(N)
    if pid.startswith("s") and pid[1:].isdigit():
        return schittkowski_problem(int(pid[1:]))

    error_msg = f"Unknown problem id '{problem_id}' (expected one of: {', '.join(PROBLEM_IDS)})"
    logger.error(f"[PROBLEMS] {error_msg}")
    raise UnsupportedProblemError(error_msg)
