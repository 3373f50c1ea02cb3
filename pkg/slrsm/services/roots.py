import numpy as np
from loguru import logger

from slrsm.core.errors import BandExceededError, DerivativeTooSmallError
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.problem import ProblemSpec
from slrsm.schemas.roots import RootResult, ScanResult
from slrsm.schemas.sampling import SampleTable
from slrsm.services.bisection import Zero, bracket_and_refine, scan_grid
from slrsm.services.expr import parse_potential
from slrsm.services.oracle import delta_direct
from slrsm.services.sampling import (
    characteristic_B_N,
    characteristic_many,
    decay_scale,
    fit_decay_constant,
)

DEFAULT_SCAN_STEP = 0.01
DEFAULT_TOL = 1e-12
DERIVATIVE_STEP = 1e-6
DERIVATIVE_FLOOR = 1e-10
FIT_POINTS = 50


def scan_and_refine(
    table: SampleTable,
    a: float,
    mu_max: float | None = None,
    scan_step: float = DEFAULT_SCAN_STEP,
    tol: float = DEFAULT_TOL,
) -> ScanResult:
    """All zeros of B_N on [0, mu_max], sorted ascending.

    mu_max defaults to 0.9 N pi / sigma, which is also the largest value allowed.
    """
    limit = table.cfg.search_limit
    mu_max = limit if mu_max is None else mu_max
    if mu_max > limit * (1 + 1e-12):
        msg = f"mu_max={mu_max!r} exceeds 0.9 N pi / sigma = {limit!r}"
        raise BandExceededError(msg)
    if tol <= 0:
        msg = "tol must be positive"
        raise ValueError(msg)

    grid = scan_grid(mu_max, scan_step)
    values = characteristic_many(table, a, grid).tolist()

    def b_n(mu: float) -> float:
        return characteristic_B_N(table, a, mu)

    scan = bracket_and_refine(b_n, grid, values, scan_step, tol)
    roots = [root_from_zero(zero, abs(b_n(zero.mu))) for zero in scan.zeros]
    logger.info(f"Found {len(roots)} zeros of B_N on [0, {mu_max:.6g}]")
    return ScanResult(roots=roots, skipped=scan.skipped, tangential=scan.tangential)


def root_from_zero(zero: Zero, residual: float) -> RootResult:
    """RootResult for a refined zero; bisection can land a rounding error below 0."""
    mu = max(zero.mu, 0.0)
    return RootResult(mu=mu, eigenvalue=mu * mu, bracket=(zero.lo, zero.hi), residual=residual)


def derivative_B_N(table: SampleTable, a: float, mu: float) -> float:  # noqa: N802
    """Central difference of B_N with step 1e-6."""
    h = DERIVATIVE_STEP
    return (characteristic_B_N(table, a, mu + h) - characteristic_B_N(table, a, mu - h)) / (2 * h)


def error_estimate(
    table: SampleTable, a: float, root: RootResult, c4: float, noise: float = 0.0
) -> float:
    """Heuristic bound on |mu_N - exact zero|.

    Uses (c4 |sinc(theta mu_N)|^-m (N+1)^-(m-1) + noise) / |B_N'(mu_N)|; the
    derivative is taken at mu_N instead of its infimum over the ball reaching
    the exact zero. noise is the integrator error level of the characteristic
    function, which does not shrink with N.
    """
    slope = abs(derivative_B_N(table, a, root.mu))
    if slope < DERIVATIVE_FLOOR:
        msg = f"|B_N'({root.mu!r})| = {slope!r} is too small; the zero looks multiple"
        raise DerivativeTooSmallError(msg)
    return (c4 * decay_scale(table.cfg, root.mu) + noise) / slope


def integrator_noise(
    p: ProblemSpec, mus: list[float], table_ivp: IvpConfig, ivp_cfg: IvpConfig
) -> float:
    """Largest |Delta at the table tolerance - Delta at the reference tolerance| over mus."""
    q = parse_potential(p.q_source)
    return max(
        (
            abs(delta_direct(p, mu, table_ivp, q=q) - delta_direct(p, mu, ivp_cfg, q=q))
            for mu in mus
        ),
        default=0.0,
    )


def estimate_errors(
    table: SampleTable,
    p: ProblemSpec,
    roots: list[RootResult],
    ivp_cfg: IvpConfig,
    mu_max: float | None = None,
    fit_points: int = FIT_POINTS,
    table_ivp: IvpConfig | None = None,
) -> tuple[float, list[RootResult]]:
    """Fit the decay constant against direct shooting and attach error estimates.

    ivp_cfg is the reference tolerance for Delta; table_ivp is the tolerance the
    table was integrated at (default IvpConfig()).

    Returns:
        (c4, roots with error_estimate filled in)
    """
    mu_max = table.cfg.search_limit if mu_max is None else mu_max
    fit_grid = [*np.linspace(0.0, mu_max, fit_points).tolist(), *(r.mu for r in roots)]
    c4 = fit_decay_constant(table, p, ivp_cfg, fit_grid)
    noise = integrator_noise(p, [r.mu for r in roots], table_ivp or IvpConfig(), ivp_cfg)
    estimated = [
        root.model_copy(update={"error_estimate": error_estimate(table, p.a, root, c4, noise)})
        for root in roots
    ]
    logger.info(f"Decay constant c4={c4:.6g}, integrator noise {noise:.3g}")
    return c4, estimated
