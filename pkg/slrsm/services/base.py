"""Base problems: y_L from (1, 0) at x = 0 and y_R from (0, 1) at x = pi.

mu only ever enters as mu * mu, so every routine here is exactly even in mu.
"""

import math
from collections.abc import Sequence

from slrsm.schemas.ivp import IvpConfig, IvpState
from slrsm.schemas.sampling import BoundaryQuad, GrowthConstants
from slrsm.services.expr import PotentialExpr, abs_integral
from slrsm.services.ivp import integrate

LEFT_INIT = (1.0, 0.0)
RIGHT_INIT = (0.0, 1.0)
GAMMA0 = 1.72


def _check_d(d: float) -> None:
    if not 0 < d < math.pi:
        msg = f"d must lie in (0, pi), got {d!r}"
        raise ValueError(msg)


def solve_left(
    q: PotentialExpr, mu: float, d: float, cfg: IvpConfig | None = None
) -> tuple[float, float]:
    """(y_L(d, mu), y_L'(d, mu))."""
    _check_d(d)
    final, _ = integrate(q, mu * mu, 0.0, d, LEFT_INIT, cfg)
    return final.u, final.v


def solve_right(
    q: PotentialExpr, mu: float, d: float, cfg: IvpConfig | None = None
) -> tuple[float, float]:
    """(y_R(d, mu), y_R'(d, mu)), integrating from pi down to d."""
    _check_d(d)
    final, _ = integrate(q, mu * mu, math.pi, d, RIGHT_INIT, cfg)
    return final.u, final.v


def solve_quad(
    q: PotentialExpr, mu: float, d: float, cfg: IvpConfig | None = None
) -> BoundaryQuad:
    y_l, dy_l = solve_left(q, mu, d, cfg)
    y_r, dy_r = solve_right(q, mu, d, cfg)
    return BoundaryQuad(mu=mu, yL=y_l, dyL=dy_l, yR=y_r, dyR=dy_r)


def trajectory_left(
    q: PotentialExpr, mu: float, d: float, cfg: IvpConfig | None, grid: Sequence[float]
) -> list[IvpState]:
    _check_d(d)
    _, states = integrate(q, mu * mu, 0.0, d, LEFT_INIT, cfg, grid)
    return states


def trajectory_right(
    q: PotentialExpr, mu: float, d: float, cfg: IvpConfig | None, grid: Sequence[float]
) -> list[IvpState]:
    _check_d(d)
    _, states = integrate(q, mu * mu, math.pi, d, RIGHT_INIT, cfg, grid)
    return states


def growth_constants(q: PotentialExpr) -> GrowthConstants:
    """Constants bounding the base solutions for real mu.

    |y_L(d)| <= gamma1, |y_R(d)| <= gamma5 / (1 + |mu| pi),
    |y_R(d) + sin(mu (pi - d)) / mu| <= gamma6 / (1 + |mu| pi)^2 and
    |y_R'(d) - cos(mu (pi - d))| <= gamma7 / (1 + |mu| pi).
    """
    q_abs = abs_integral(q)
    gamma1 = math.exp(GAMMA0 * math.pi * q_abs)
    gamma5 = GAMMA0 * math.pi * gamma1
    return GrowthConstants(
        gamma0=GAMMA0,
        q_abs_integral=q_abs,
        gamma1=gamma1,
        gamma5=gamma5,
        gamma6=GAMMA0 * math.pi * gamma5 * q_abs,
        gamma7=gamma5 * q_abs,
    )
