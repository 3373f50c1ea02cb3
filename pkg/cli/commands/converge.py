import argparse
import sys
from pathlib import Path

from slrsm.services.export import fmt
from slrsm.services.pipeline import RunService, load_config


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "converge", help="zeros of B_N for several truncation indices N"
    )
    parser.add_argument("config", type=Path, help="TOML run configuration")
    parser.add_argument(
        "--n", type=int, nargs="+", default=[20, 30, 40], help="truncation indices to compare"
    )
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    zeros = RunService(load_config(args.config)).converge(args.n)
    width = max((len(z) for z in zeros.values()), default=0)
    lines = ["N    " + "  ".join(f"{f'mu_{k}':>18}" for k in range(1, width + 1))]
    lines.extend(
        f"{n:<4} " + "  ".join(f"{fmt(mu):>18}" for mu in found) for n, found in zeros.items()
    )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0
