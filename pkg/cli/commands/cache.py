import argparse
import sys
from pathlib import Path

from slrsm.services.cache import TableCache


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("cache", help="manage the sample table cache")
    actions = parser.add_subparsers(dest="action", required=True)
    clear = actions.add_parser("clear", help="delete every cached sample table")
    clear.add_argument("--cache-dir", type=Path, help="cache directory to clear")
    clear.set_defaults(handler=handle_clear)


def handle_clear(args: argparse.Namespace) -> int:
    cache = TableCache(args.cache_dir)
    removed = cache.clear()
    sys.stdout.write(f"Removed {removed} cached table(s) from {cache.cache_dir}\n")
    return 0
