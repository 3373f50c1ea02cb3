import argparse
from collections.abc import Sequence

from loguru import logger

from cli.utils.error_handler import error_handler
from slrsm.utils.command_discovery import register_commands
from slrsm.utils.logging import setup_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slrsm",
        description="Eigenvalues of Sturm-Liouville problems with transmission conditions "
        "by the regularized sampling method.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output")
    subparsers = parser.add_subparsers(dest="command", required=True)
    names = register_commands(subparsers)
    logger.debug(f"Registered commands: {', '.join(names)}")
    return parser


def main(argv: Sequence[str] | None = None, configure_logging: bool = True) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if configure_logging:
        setup_logging("slrsm.log", verbose=args.verbose)
    try:
        return args.handler(args)
    except Exception as e:
        return error_handler(e)
