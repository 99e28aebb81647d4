import argparse

from loguru import logger

from noisytr.commands.overrides import add_run_flags, apply_overrides
from noisytr.harness.presets import resolve_config
from noisytr.harness.rtable import r_table


def rtable_command(args: argparse.Namespace) -> dict:
    cfg = apply_overrides(resolve_config(args.config), args)
    logger.info(f"[CLI] rtable {args.config}")
    result = r_table(cfg, workers=args.workers)
    return {
        "table_file": result.table_file,
        "summary_file": result.summary_file,
        "spread": result.spread,
        "all_finite": result.all_finite,
        "all_contained": result.all_contained,
    }


def register(subparsers) -> None:
    parser = subparsers.add_parser("rtable", help="Build the R table over a noise grid")
    parser.add_argument("config", help="TOML config path or preset name")
    add_run_flags(parser)
    parser.set_defaults(handler=rtable_command)
