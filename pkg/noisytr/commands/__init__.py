from noisytr.commands import (
    check_controller,
    constants_controller,
    preset_controller,
    rtable_controller,
    run_controller,
)


def setup_commands(subparsers) -> None:
    """Register every subcommand on the CLI parser"""
    run_controller.register(subparsers)
    preset_controller.register(subparsers)
    rtable_controller.register(subparsers)
    constants_controller.register(subparsers)
    check_controller.register(subparsers)
