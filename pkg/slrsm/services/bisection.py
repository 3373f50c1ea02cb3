import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from loguru import logger
from scipy.optimize import bisect


@dataclass(frozen=True, slots=True)
class Zero:
    mu: float
    lo: float
    hi: float


@dataclass(slots=True)
class BracketScan:
    zeros: list[Zero] = field(default_factory=list)
    skipped: list[float] = field(default_factory=list)
    tangential: list[float] = field(default_factory=list)


def scan_grid(mu_max: float, step: float) -> list[float]:
    """{0, step, 2 step, ...} up to and including mu_max."""
    if step <= 0 or mu_max <= 0:
        msg = "scan step and mu_max must be positive"
        raise ValueError(msg)
    count = math.floor(mu_max / step + 1e-9)
    grid = [k * step for k in range(count + 1)]
    if mu_max - grid[-1] > 1e-9 * step:
        grid.append(mu_max)
    return grid


def _refine(func: Callable[[float], float], lo: float, hi: float, tol: float) -> Zero:
    mu = bisect(func, lo, hi, xtol=tol, maxiter=500)
    return Zero(mu=float(mu), lo=lo, hi=hi)


def bracket_and_refine(
    func: Callable[[float], float],
    grid: Sequence[float],
    values: Sequence[float],
    step: float,
    tol: float,
) -> BracketScan:
    """Bracket every sign change of the sampled function and bisect it to width tol.

    NaN values mark points that could not be evaluated; they are skipped. An
    exact zero at a grid point is bracketed by a window of width step centred
    on it and kept only when the function changes sign across that window.
    """
    scan = BracketScan()
    for mu, value in zip(grid, values, strict=True):
        if math.isnan(value):
            scan.skipped.append(mu)
            continue
        if value == 0.0:
            lo, hi = mu - step / 2, mu + step / 2
            f_lo, f_hi = func(lo), func(hi)
            if f_lo * f_hi < 0:
                scan.zeros.append(_refine(func, lo, hi, tol))
            else:
                scan.tangential.append(mu)

    for (mu0, v0), (mu1, v1) in zip(
        zip(grid, values, strict=True), zip(grid[1:], values[1:], strict=True), strict=False
    ):
        if math.isnan(v0) or math.isnan(v1) or v0 == 0.0 or v1 == 0.0:
            continue
        if (v0 < 0) != (v1 < 0):
            scan.zeros.append(_refine(func, mu0, mu1, tol))

    scan.zeros.sort(key=lambda zero: zero.mu)
    if scan.skipped:
        logger.warning(f"Skipped {len(scan.skipped)} scan points near regularizer zeros")
    logger.debug(f"Bracketed {len(scan.zeros)} zeros on {len(grid)} scan points")
    return scan
