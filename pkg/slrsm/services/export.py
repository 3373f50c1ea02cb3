import csv
import io
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from slrsm.core.enums import Side
from slrsm.schemas.eigen import Eigenpair
from slrsm.schemas.oracle import OracleResult
from slrsm.schemas.report import ComparisonRow, RunReport
from slrsm.schemas.roots import RootResult
from slrsm.services.cache import atomic_write_text

MATCH_WINDOW = 1e-4


def fmt(value: float | None) -> str:
    """12 significant digits, matching the precision of published tables."""
    return "" if value is None else f"{value:.12g}"


def compare_roots(
    roots: Sequence[RootResult], oracle: OracleResult
) -> tuple[list[ComparisonRow], list[float]]:
    """Pair every sampled zero with the nearest oracle zero.

    Returns:
        (rows sorted by oracle index, sampled zeros with no oracle zero within 1e-4)
    """
    rows: list[ComparisonRow] = []
    unmatched: list[float] = []
    zeros = np.asarray(oracle.zeros)
    for root in roots:
        if zeros.size == 0:
            unmatched.append(root.mu)
            continue
        k = int(np.argmin(np.abs(zeros - root.mu)))
        exact = float(zeros[k])
        abs_err = abs(exact - root.mu)
        if abs_err > MATCH_WINDOW:
            unmatched.append(root.mu)
            continue
        rows.append(
            ComparisonRow(
                index=k + 1,
                oracle_mu=exact,
                rsm_mu=root.mu,
                abs_err=abs_err,
                rel_err=abs_err / exact if exact else float("inf"),
            )
        )
    rows.sort(key=lambda row: row.index)
    return rows, unmatched


def _csv_text(header: Sequence[str] | None, rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if header:
        writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def eigenvalues_csv(report: RunReport) -> str:
    by_mu = {row.rsm_mu: row for row in report.table}
    rows = []
    for index, root in enumerate(report.roots, start=1):
        row = by_mu.get(root.mu)
        rows.append([
            str(index),
            fmt(root.mu),
            fmt(root.eigenvalue),
            fmt(row.abs_err if row else None),
            fmt(row.rel_err if row else None),
            fmt(root.error_estimate),
        ])
    header = ["index", "mu", "eigenvalue", "abs_err", "rel_err", "error_estimate"]
    return _csv_text(header, rows)


def eigenfunction_csv(pair: Eigenpair) -> str:
    rows = [
        [fmt(x), fmt(y), fmt(dy), side.value]
        for grid, side in ((pair.grid_left, Side.L), (pair.grid_right, Side.R))
        for x, y, dy in zip(grid.x, grid.y, grid.dy, strict=True)
    ]
    return _csv_text(["x", "y", "yprime", "side"], rows)


def gram_csv(gram: np.ndarray | list[list[float]]) -> str:
    return _csv_text(None, ([fmt(v) for v in row] for row in np.asarray(gram).tolist()))


def format_table(rows: Sequence[ComparisonRow]) -> str:
    """Plain-text comparison table: Index, Exact, RSM, Absolute Error, Relative Error."""
    header = f"{'Index':>5}  {'Exact':>18}  {'RSM':>18}  {'Absolute Error':>18}  {'Relative Error':>18}"
    lines = [header, "-" * len(header)]
    lines.extend(
        f"{row.index:>5}  {fmt(row.oracle_mu):>18}  {fmt(row.rsm_mu):>18}  "
        f"{row.abs_err:>18.12g}  {row.rel_err:>18.12g}"
        for row in rows
    )
    return "\n".join(lines)


def write_outputs(report: RunReport, pairs: Sequence[Eigenpair], output_dir: Path) -> list[Path]:
    """Write report.json, eigenvalues.csv, eigenfunction_k.csv/.json and gram.csv."""
    output_dir.mkdir(parents=True, exist_ok=True)
    files: dict[str, str] = {
        "report.json": report.model_dump_json(indent=2),
        "eigenvalues.csv": eigenvalues_csv(report),
        "gram.csv": gram_csv(report.gram),
    }
    for pair in pairs:
        files[f"eigenfunction_{pair.index}.csv"] = eigenfunction_csv(pair)
        files[f"eigenfunction_{pair.index}.json"] = pair.model_dump_json(indent=2)

    written = []
    for name, text in files.items():
        path = output_dir / name
        atomic_write_text(path, text)
        written.append(path)
    return written
