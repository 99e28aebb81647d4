import argparse

from loguru import logger

from noisytr.commands.overrides import add_run_flags, apply_overrides
from noisytr.harness.experiment import run_experiment
from noisytr.harness.presets import resolve_config


def run_command(args: argparse.Namespace) -> dict:
    cfg = apply_overrides(resolve_config(args.config), args)
    logger.info(f"[CLI] run {args.config}")
    result = run_experiment(cfg, workers=args.workers)
    return result.model_dump(mode="json")


def register(subparsers) -> None:
    parser = subparsers.add_parser("run", help="Run an experiment config")
    parser.add_argument("config", help="TOML config path or preset name")
    add_run_flags(parser)
    parser.set_defaults(handler=run_command)
