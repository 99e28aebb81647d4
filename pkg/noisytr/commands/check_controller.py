import argparse

import numpy as np

from noisytr.errors import ConfigError
from noisytr.noise.noise_stream import counter_generator
from noisytr.problems.finite_difference import finite_difference_check
from noisytr.problems.registry import get_problem


def check_command(args: argparse.Namespace) -> dict:
    """Finite-difference and symmetry checks at the start point and random points in [-1, 1]^n."""
    if args.points < 0:
        raise ConfigError("must be nonnegative", field="--points")
    obj = get_problem(args.problem)
    rng = counter_generator(args.seed, 0, "x0")
    points = [rng.uniform(-1.0, 1.0, obj.dimension) for _ in range(args.points)]
    if obj.default_start is not None:
        points.insert(0, obj.default_start)

    grad_errs, hess_errs, asym = [], [], 0.0
    for x in points:
        report = finite_difference_check(obj, x, args.h)
        grad_errs.append(report.grad_rel_err)
        hess_errs.append(report.hess_rel_err)
        H = obj.hessian(x)
        asym = max(asym, float(np.max(np.abs(H - H.T))))

    result = {
        "problem": obj.name,
        "points": len(points),
        "max_grad_rel_err": max(grad_errs, default=0.0),
        "max_hess_rel_err": max(hess_errs, default=0.0),
        "max_hessian_asymmetry": asym,
    }
    if obj.known_minimizer is not None:
        result["gnorm_at_minimizer"] = float(np.linalg.norm(obj.gradient(obj.known_minimizer)))
        result["f_at_minimizer"] = obj.value(obj.known_minimizer)
    if obj.default_start is not None:
        result["f_at_start"] = obj.value(obj.default_start)
    return result


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Finite-difference suite for a problem")
    parser.add_argument("problem", help="Problem id, e.g. quadratic8, tridiag:200, s271")
    parser.add_argument("--h", type=float, default=1e-5, help="Difference step")
    parser.add_argument("--points", type=int, default=20, help="Random points in [-1, 1]^n")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the random points")
    parser.set_defaults(handler=check_command)
