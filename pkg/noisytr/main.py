import argparse
import sys
from typing import List, Optional

from loguru import logger

from noisytr.commands import setup_commands
from noisytr.config import settings
from noisytr.errors import NoisyTRError
from noisytr.logger import setup_logger
from noisytr.utils.response import error_response, success_response


class UsageError(NoisyTRError):
    pass


class JsonArgumentParser(argparse.ArgumentParser):
    """Argument errors are reported as a JSON error line, exit code 2."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = JsonArgumentParser(
        prog="noisytr",
        description="Noise-tolerant trust-region experiments",
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=JsonArgumentParser)
    setup_commands(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    setup_logger(settings)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return error_response(str(e), "UsageError", exit_code=2)
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    if not getattr(args, "handler", None):
        parser.print_help(sys.stderr)
        return error_response("no command given", "UsageError", exit_code=2)

    try:
        return success_response(args.handler(args))
    except NoisyTRError as e:
        logger.error(f"[CLI] {args.command} failed: {e}")
        return error_response(str(e), type(e).__name__)
    except Exception as e:
        logger.exception(f"[CLI] unexpected error in {args.command}")
        return error_response(str(e), type(e).__name__)


if __name__ == "__main__":
    sys.exit(main())
