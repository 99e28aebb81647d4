import argparse
from typing import List

from noisytr.errors import ConfigError
from noisytr.harness.experiment_model import ExperimentConfig, validate_config
from noisytr.optim.subproblem import SubproblemSolver


def parse_seeds(text: str) -> List[int]:
    """'1,2,5' or '1-10' (inclusive) or a mix of both."""
    seeds: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = part.split("-", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            else:
                seeds.append(int(part))
    except ValueError as e:
        raise ConfigError(f"cannot parse seeds '{text}'", field="--seeds") from e
    return seeds


def add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seeds", help="Seeds, e.g. 1-10 or 1,4,7")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--iters", type=int, help="Iteration budget")
    parser.add_argument("--delta0", type=float, help="Initial trust-region radius")
    parser.add_argument("--variant", choices=["classical", "noisy", "both"], help="Ratio variant(s) to run")
    parser.add_argument("--solver", choices=[s.value for s in SubproblemSolver], help="Subproblem solver")
    parser.add_argument("--workers", type=int, help="Worker processes for seed sweeps")


def apply_overrides(cfg: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    """Merge command-line flags into a config and validate the result."""
    data = cfg.model_dump(mode="json")
    if getattr(args, "seeds", None):
        data["experiment"]["seeds"] = parse_seeds(args.seeds)
    if getattr(args, "out", None):
        data["experiment"]["output_dir"] = args.out
    if getattr(args, "iters", None) is not None:
        data["trust_region"]["max_iters"] = args.iters
    if getattr(args, "delta0", None) is not None:
        data["trust_region"]["delta0"] = args.delta0
    if getattr(args, "variant", None):
        data["experiment"]["variants"] = ["classical", "noisy"] if args.variant == "both" else [args.variant]
    if getattr(args, "solver", None):
        data["trust_region"]["solver"] = args.solver
    return validate_config(data)
