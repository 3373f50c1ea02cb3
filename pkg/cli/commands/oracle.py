import argparse
import sys
from pathlib import Path

from slrsm.services.export import fmt
from slrsm.services.pipeline import RunService, load_config


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("oracle", help="zeros of Delta by direct shooting only")
    parser.add_argument("config", type=Path, help="TOML run configuration")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    result = RunService(load_config(args.config)).oracle()
    lines = [f"method: {result.method}  scan_step: {result.scan_step:g}  tol: {result.tol:g}"]
    lines.extend(
        f"{k:>3}  mu={fmt(mu):>18}  eigenvalue={fmt(mu * mu):>18}"
        for k, mu in enumerate(result.zeros, start=1)
    )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0
