import argparse

from noisytr.harness.presets import resolve_config
from noisytr.problems.registry import get_problem
from noisytr.theory.constants import (
    accepted_increase_bound,
    compute_constants,
    estimate_M,
    level_set_bound,
    noisy_reduction_floor,
)


def constants_command(args: argparse.Namespace) -> dict:
    """Theory constants for a config, with L = ||H(x*)|| and L_B = L + eps_B."""
    cfg = resolve_config(args.config)
    obj = get_problem(cfg.problem.id)
    noise, tr = cfg.noise, cfg.trust_region
    L = estimate_M(obj)
    L_B = L + noise.eps_B
    tc = compute_constants(noise.eps_f, noise.eps_g, tr.c0, tr.c2, tr.nu, 0.5 * (L + L_B), L=L, L_B=L_B)
    return {
        "problem": obj.name,
        "constants": tc.model_dump(mode="json"),
        "level_set_band": level_set_bound(tc, L, noise.eps_f, noise.eps_g, tr.c0, tr.nu),
        "accepted_increase_bound": accepted_increase_bound(tc.r, tr.c0, noise.eps_f),
        "noisy_reduction_floor": noisy_reduction_floor(tc),
    }


def register(subparsers) -> None:
    parser = subparsers.add_parser("constants", help="Print the theory constants of a config")
    parser.add_argument("config", help="TOML config path or preset name")
    parser.set_defaults(handler=constants_command)
