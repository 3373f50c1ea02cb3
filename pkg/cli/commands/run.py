import argparse
import sys
from pathlib import Path

from slrsm.services.export import fmt
from slrsm.services.pipeline import RunService, load_config


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("run", help="run the full pipeline and write all outputs")
    parser.add_argument("config", type=Path, help="TOML run configuration")
    parser.add_argument("--output-dir", type=Path, help="override output_dir from the config")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.output_dir is not None:
        config = config.model_copy(update={"output_dir": args.output_dir})

    report, _ = RunService(config).run()

    lines = [f"{'k':>3}  {'mu':>18}  {'eigenvalue':>18}  {'error estimate':>18}"]
    lines.extend(
        f"{k:>3}  {fmt(root.mu):>18}  {fmt(root.eigenvalue):>18}  {fmt(root.error_estimate):>18}"
        for k, root in enumerate(report.roots, start=1)
    )
    lines.append(f"Outputs written to {config.output_dir}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0
