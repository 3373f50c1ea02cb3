"""Reference zeros of the characteristic function without any sampling.

Delta(mu) = a y_L(d) y_R'(d) - a^-1 y_L'(d) y_R(d), evaluated either by direct
integration of both base problems or, for q = 0, in closed form.
"""

import math
from collections.abc import Callable

from loguru import logger

from slrsm.core.enums import OracleMethod
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.oracle import OracleResult
from slrsm.schemas.problem import ProblemSpec
from slrsm.services.base import solve_left, solve_right
from slrsm.services.bisection import bracket_and_refine, scan_grid
from slrsm.services.expr import PotentialExpr, parse_potential

ORACLE_IVP = IvpConfig(abs_tol=1e-13, rel_tol=1e-13)
ORACLE_TOL = 1e-12
ORACLE_SCAN_STEP = 0.05


def delta_direct(
    p: ProblemSpec, mu: float, ivp_cfg: IvpConfig = ORACLE_IVP, q: PotentialExpr | None = None
) -> float:
    """Characteristic function by direct shooting at the given tolerance."""
    q = q or parse_potential(p.q_source)
    y_l, dy_l = solve_left(q, mu, p.d, ivp_cfg)
    y_r, dy_r = solve_right(q, mu, p.d, ivp_cfg)
    return p.a * y_l * dy_r - dy_l * y_r / p.a


def closed_form_q0(a: float, d: float, mu: float) -> float:
    """Characteristic function of the q = 0 problem; equals a at mu = 0."""
    return a * math.cos(mu * d) * math.cos(mu * (math.pi - d)) - math.sin(mu * d) * math.sin(
        mu * (math.pi - d)
    ) / a


def _find_zeros(
    func: Callable[[float], float], mu_max: float, scan_step: float, tol: float
) -> list[float]:
    grid = scan_grid(mu_max, scan_step)
    values = [func(mu) for mu in grid]
    return [zero.mu for zero in bracket_and_refine(func, grid, values, scan_step, tol).zeros]


def find_zeros_direct(
    p: ProblemSpec,
    mu_max: float,
    scan_step: float = ORACLE_SCAN_STEP,
    tol: float = ORACLE_TOL,
    ivp_cfg: IvpConfig = ORACLE_IVP,
) -> OracleResult:
    """Dense scan plus bisection on the directly integrated characteristic function."""
    q = parse_potential(p.q_source)
    logger.info(f"Oracle scan of Delta on [0, {mu_max:.6g}] with step {scan_step:g}")
    zeros = _find_zeros(lambda mu: delta_direct(p, mu, ivp_cfg, q=q), mu_max, scan_step, tol)
    logger.info(f"Oracle found {len(zeros)} zeros")
    return OracleResult(
        zeros=zeros, scan_step=scan_step, tol=tol, method=OracleMethod.DIRECT_SHOOTING
    )


def find_zeros_closed_form(
    a: float, d: float, mu_max: float, scan_step: float = 0.01, tol: float = ORACLE_TOL
) -> OracleResult:
    zeros = _find_zeros(lambda mu: closed_form_q0(a, d, mu), mu_max, scan_step, tol)
    return OracleResult(
        zeros=zeros, scan_step=scan_step, tol=tol, method=OracleMethod.CLOSED_FORM_Q0
    )
