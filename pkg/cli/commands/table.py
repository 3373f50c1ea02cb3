import argparse
import sys
from pathlib import Path

from slrsm.services.export import format_table
from slrsm.services.pipeline import RunService, load_config


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "table", help="print the oracle versus sampling comparison table"
    )
    parser.add_argument("config", type=Path, help="TOML run configuration")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    rows, unmatched = RunService(load_config(args.config)).comparison()
    out = format_table(rows)
    if unmatched:
        out += "\nno oracle zero near: " + ", ".join(f"{mu:.12g}" for mu in unmatched)
    sys.stdout.write(out + "\n")
    return 0
