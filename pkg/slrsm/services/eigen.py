import math

import numpy as np
from loguru import logger
from scipy.integrate import simpson

from slrsm.core.errors import DegenerateAlphaError, GridMismatchError
from slrsm.schemas.eigen import EigenGrid, Eigenpair
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.problem import ProblemSpec
from slrsm.services.base import trajectory_left, trajectory_right
from slrsm.services.expr import parse_potential

DEGENERATE = 1e-12
MIN_GRID_PTS = 16


def assemble_eigenfunction(
    p: ProblemSpec, mu_k: float, grid_pts: int, ivp_cfg: IvpConfig, index: int = 1
) -> Eigenpair:
    """Piecewise eigenfunction y_L on [0, d] and alpha y_R on [d, pi].

    alpha comes from whichever transmission condition is better conditioned:
    a y_L(d) / y_R(d) when |y_R(d)| >= |y_R'(d)|, else y_L'(d) / (a y_R'(d)).
    The other value is kept as alpha_check.
    """
    if grid_pts < MIN_GRID_PTS:
        msg = f"grid_pts must be at least {MIN_GRID_PTS}"
        raise ValueError(msg)

    q = parse_potential(p.q_source)
    left_x = np.linspace(0.0, p.d, grid_pts).tolist()
    right_x = np.linspace(p.d, math.pi, grid_pts).tolist()
    left = trajectory_left(q, mu_k, p.d, ivp_cfg, left_x)
    right = trajectory_right(q, mu_k, p.d, ivp_cfg, right_x)

    y_l, dy_l = left[-1].u, left[-1].v
    y_r, dy_r = right[0].u, right[0].v
    if abs(y_r) < DEGENERATE and abs(dy_r) < DEGENERATE:
        msg = f"y_R and y_R' both vanish at d for mu={mu_k!r}"
        raise DegenerateAlphaError(msg)

    from_value = p.a * y_l / y_r if y_r != 0 else math.nan
    from_slope = dy_l / (p.a * dy_r) if dy_r != 0 else math.nan
    if abs(y_r) >= abs(dy_r):
        alpha, alpha_check = from_value, from_slope
    else:
        alpha, alpha_check = from_slope, from_value

    grid_left = EigenGrid(
        x=[s.x for s in left], y=[s.u for s in left], dy=[s.v for s in left]
    )
    grid_right = EigenGrid(
        x=[s.x for s in right], y=[s.u for s in right], dy=[s.v for s in right]
    ).scaled(alpha)

    norm_sq = _inner(grid_left, grid_left) + _inner(grid_right, grid_right)
    logger.debug(f"Eigenfunction {index}: mu={mu_k:.12g} alpha={alpha:.12g}")
    return Eigenpair(
        index=index,
        mu=mu_k,
        eigenvalue=mu_k * mu_k,
        alpha=alpha,
        alpha_check=alpha_check,
        grid_left=grid_left,
        grid_right=grid_right,
        l2_norm=math.sqrt(norm_sq),
    )


def _inner(f: EigenGrid, g: EigenGrid) -> float:
    x = np.asarray(f.x)
    return float(simpson(np.asarray(f.y) * np.asarray(g.y), x=x))


def _check_grids(pairs: list[Eigenpair]) -> None:
    first = pairs[0]
    for pair in pairs[1:]:
        if pair.grid_left.x != first.grid_left.x or pair.grid_right.x != first.grid_right.x:
            msg = f"Eigenpair {pair.index} does not share the grids of eigenpair {first.index}"
            raise GridMismatchError(msg)


def gram_matrix(pairs: list[Eigenpair]) -> np.ndarray:
    """Inner products on (0, pi), by composite Simpson on each side of d separately."""
    if not pairs:
        return np.zeros((0, 0))
    _check_grids(pairs)
    size = len(pairs)
    gram = np.zeros((size, size))
    for i in range(size):
        for j in range(i, size):
            value = _inner(pairs[i].grid_left, pairs[j].grid_left) + _inner(
                pairs[i].grid_right, pairs[j].grid_right
            )
            gram[i, j] = gram[j, i] = value
    return gram


def normalized_gram(gram: np.ndarray) -> np.ndarray:
    """G[i, j] / sqrt(G[i, i] G[j, j])."""
    scale = np.sqrt(np.diag(gram))
    return gram / np.outer(scale, scale)


def _side_residual(q_values: np.ndarray, mu_sq: float, grid: EigenGrid) -> float:
    x, y, _ = grid.arrays()
    h = x[1] - x[0]
    # 5-point second difference; the stencil stays inside one side of d
    ypp = (-y[:-4] + 16 * y[1:-3] - 30 * y[2:-2] + 16 * y[3:-1] - y[4:]) / (12 * h * h)
    residual = np.abs(-ypp + (q_values[2:-2] - mu_sq) * y[2:-2])
    peak = np.max(np.abs(y))
    return float(np.max(residual) / peak) if peak > 0 else 0.0


def residual_check(p: ProblemSpec, pair: Eigenpair) -> float:
    """max |-y'' + (q - mu^2) y| / max |y| over interior points, worst of the two sides."""
    q = parse_potential(p.q_source)
    mu_sq = pair.mu * pair.mu
    return max(
        _side_residual(q.evaluate_many(np.asarray(grid.x)), mu_sq, grid)
        for grid in (pair.grid_left, pair.grid_right)
    )


def jump_ratios(pair: Eigenpair) -> tuple[float, float]:
    """(y(d+0) / y(d-0), y'(d+0) / y'(d-0)); a and 1/a for a true eigenfunction."""
    return (
        pair.grid_right.y[0] / pair.grid_left.y[-1],
        pair.grid_right.dy[0] / pair.grid_left.dy[-1],
    )


def transmission_defects(pair: Eigenpair, a: float) -> tuple[float, float]:
    """Relative residuals of y(d+0) = a y(d-0) and y'(d+0) = y'(d-0) / a."""
    y_minus, y_plus = pair.grid_left.y[-1], pair.grid_right.y[0]
    dy_minus, dy_plus = pair.grid_left.dy[-1], pair.grid_right.dy[0]
    value_scale = max(abs(y_plus), abs(a * y_minus)) or 1.0
    slope_scale = max(abs(dy_plus), abs(dy_minus / a)) or 1.0
    return (
        abs(y_plus - a * y_minus) / value_scale,
        abs(dy_plus - dy_minus / a) / slope_scale,
    )


def scaled_pair(pair: Eigenpair, factor: float) -> Eigenpair:
    """Same eigenpair with both sides multiplied by factor."""
    return pair.model_copy(
        update={
            "grid_left": pair.grid_left.scaled(factor),
            "grid_right": pair.grid_right.scaled(factor),
            "l2_norm": abs(factor) * pair.l2_norm,
        }
    )
