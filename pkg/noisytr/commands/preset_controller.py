import argparse

from loguru import logger

from noisytr.commands.overrides import add_run_flags, apply_overrides
from noisytr.harness.experiment import run_experiment
from noisytr.harness.presets import list_presets, load_preset


def preset_command(args: argparse.Namespace):
    if args.list or not args.name:
        return {"presets": list_presets()}
    cfg = apply_overrides(load_preset(args.name), args)
    logger.info(f"[CLI] preset {args.name}")
    return run_experiment(cfg, workers=args.workers).model_dump(mode="json")


def register(subparsers) -> None:
    parser = subparsers.add_parser("preset", help="Run a shipped preset")
    parser.add_argument("name", nargs="?", help="Preset name")
    parser.add_argument("--list", action="store_true", help="List the shipped presets")
    add_run_flags(parser)
    parser.set_defaults(handler=preset_command)
