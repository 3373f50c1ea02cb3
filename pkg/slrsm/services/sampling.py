"""Regularized sampling of the boundary functions and their cardinal series.

For the sinc regularizer s(mu) = sinc(theta mu)^m the four functions

    h11 = s (y_L(d) - cos mu d)          h12 = s (y_L'(d) + mu sin mu d)
    h21 = s (y_R(d) + sin mu(pi-d) / mu) h22 = s (y_R'(d) - cos mu(pi-d))

are band limited to sigma = sigma0 + m theta and decay like (1 + theta |mu|)^-m,
so a short symmetric cardinal series at mu_j = j pi / sigma recovers them.
They are even in mu; only j >= 0 is stored.
"""

import cmath
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import overload

import numpy as np
from loguru import logger

from slrsm.core.config import settings
from slrsm.core.enums import HFunction
from slrsm.core.errors import OutOfBandError, SingularRegularizerError
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.problem import ProblemSpec
from slrsm.schemas.sampling import BoundaryQuad, SampleTable, SamplingConfig
from slrsm.services.base import solve_quad
from slrsm.services.cache import problem_hash
from slrsm.services.expr import PotentialExpr, parse_potential

SERIES_CUTOFF = 1e-4
NODE_HIT = 1e-13
SINGULAR_GUARD = 1e-8


@overload
def sinc(z: float) -> float: ...
@overload
def sinc(z: complex) -> complex: ...
def sinc(z: float | complex) -> float | complex:
    """sin(z) / z with the removable singularity at 0 filled in."""
    if abs(z) < SERIES_CUTOFF:
        z2 = z * z
        return 1 - z2 / 6 + z2 * z2 / 120
    if isinstance(z, complex):
        return cmath.sin(z) / z
    return math.sin(z) / z


def sinc_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < SERIES_CUTOFF
    safe = np.where(small, 1.0, z)
    z2 = z * z
    return np.where(small, 1 - z2 / 6 + z2 * z2 / 120, np.sin(safe) / safe)


def h_values(quad: BoundaryQuad, cfg: SamplingConfig) -> tuple[float, float, float, float]:
    """Regularized boundary functions at quad.mu."""
    mu, d = quad.mu, cfg.d
    right = math.pi - d
    reg = sinc(cfg.theta * mu) ** cfg.m
    return (
        reg * (quad.yL - math.cos(mu * d)),
        reg * (quad.dyL + mu * math.sin(mu * d)),
        reg * (quad.yR + right * sinc(mu * right)),
        reg * (quad.dyR - math.cos(mu * right)),
    )


def _node_h_values(
    q: PotentialExpr, mu: float, cfg: SamplingConfig, ivp_cfg: IvpConfig
) -> tuple[float, float, float, float]:
    return h_values(solve_quad(q, mu, cfg.d, ivp_cfg), cfg)


def build_sample_table(
    p: ProblemSpec, cfg: SamplingConfig, ivp_cfg: IvpConfig, workers: int | None = None
) -> SampleTable:
    """Integrate both base problems at every node mu_j, j = 0..N."""
    if not math.isclose(p.d, cfg.d, rel_tol=0, abs_tol=1e-15):
        msg = f"Sampling config d={cfg.d!r} does not match problem d={p.d!r}"
        raise ValueError(msg)

    q = parse_potential(p.q_source)
    nodes = cfg.node_values().tolist()
    workers = workers or settings.workers
    logger.info(
        f"Sampling {len(nodes)} nodes (N={cfg.N}, m={cfg.m}, theta={cfg.theta:.6g}, "
        f"sigma={cfg.sigma:.6g}) with {workers} worker(s)"
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(
                    _node_h_values,
                    [q] * len(nodes),
                    nodes,
                    [cfg] * len(nodes),
                    [ivp_cfg] * len(nodes),
                )
            )
    else:
        rows = [_node_h_values(q, mu, cfg, ivp_cfg) for mu in nodes]

    h11, h12, h21, h22 = (list(col) for col in zip(*rows, strict=True))
    return SampleTable(
        cfg=cfg,
        nodes=nodes,
        h11=h11,
        h12=h12,
        h21=h21,
        h22=h22,
        problem_hash=problem_hash(p, ivp_cfg, cfg),
    )


def synthetic_table(
    cfg: SamplingConfig, func: Callable[[float], float], label: str = "synthetic"
) -> SampleTable:
    """Table whose four columns all hold samples of an even function of mu."""
    nodes = cfg.node_values().tolist()
    values = [float(func(mu)) for mu in nodes]
    return SampleTable(
        cfg=cfg, nodes=nodes, h11=values, h12=values, h21=values, h22=values, problem_hash=label
    )


def _check_band(table: SampleTable, mus: np.ndarray) -> None:
    edge = table.cfg.band_edge
    if np.any(np.abs(mus) >= edge):
        worst = float(np.max(np.abs(mus)))
        msg = f"|mu|={worst!r} is outside the band |mu| < N pi / sigma = {edge!r}"
        raise OutOfBandError(msg)


def cardinal_series_many(table: SampleTable, which: HFunction, mus: Sequence[float]) -> np.ndarray:
    """Truncated cardinal series of one h-function at many points."""
    cfg = table.cfg
    mus_abs = np.abs(np.asarray(mus, dtype=float))
    _check_band(table, mus_abs)

    samples = table.samples(which)
    full = np.concatenate([samples[:0:-1], samples])
    offsets = np.arange(-cfg.N, cfg.N + 1) * cfg.spacing
    kernel = sinc_array(cfg.sigma * (mus_abs[:, None] - offsets[None, :]))
    values = kernel @ full

    # Exact node hits return the stored sample
    nearest = np.rint(mus_abs / cfg.spacing).astype(int)
    hits = (nearest <= cfg.N) & (np.abs(mus_abs - nearest * cfg.spacing) < NODE_HIT)
    values[hits] = samples[nearest[hits]]
    return values


def cardinal_series(table: SampleTable, which: HFunction, mu: float) -> float:
    return float(cardinal_series_many(table, which, [mu])[0])


def _regularizer(cfg: SamplingConfig, mu: float) -> float:
    reg = sinc(cfg.theta * mu)
    if abs(reg) < SINGULAR_GUARD:
        msg = f"sinc(theta mu) vanishes at mu={mu!r} (multiple of pi/theta={cfg.first_singularity!r})"
        raise SingularRegularizerError(msg)
    return reg**cfg.m


def reconstruct_quad(table: SampleTable, mu: float) -> BoundaryQuad:
    """Boundary quad recovered from the reconstructed h-functions."""
    cfg = table.cfg
    reg = _regularizer(cfg, mu)
    h11, h12, h21, h22 = (cardinal_series(table, which, mu) for which in HFunction)
    d, right = cfg.d, math.pi - cfg.d
    return BoundaryQuad(
        mu=mu,
        yL=h11 / reg + math.cos(mu * d),
        dyL=h12 / reg - mu * math.sin(mu * d),
        yR=h21 / reg - right * sinc(mu * right),
        dyR=h22 / reg + math.cos(mu * right),
    )


def characteristic_B_N(table: SampleTable, a: float, mu: float) -> float:  # noqa: N802
    """Approximate characteristic function a yL dyR - a^-1 dyL yR."""
    quad = reconstruct_quad(table, mu)
    return a * quad.yL * quad.dyR - quad.dyL * quad.yR / a


def characteristic_many(table: SampleTable, a: float, mus: Sequence[float]) -> np.ndarray:
    """B_N on many points; NaN where the regularizer is too close to zero."""
    cfg = table.cfg
    mus = np.asarray(mus, dtype=float)
    _check_band(table, mus)

    reg = sinc_array(cfg.theta * mus)
    singular = np.abs(reg) < SINGULAR_GUARD
    inv = np.where(singular, np.nan, 1.0 / np.where(singular, 1.0, reg) ** cfg.m)

    h11, h12, h21, h22 = (cardinal_series_many(table, which, mus) for which in HFunction)
    d, right = cfg.d, math.pi - cfg.d
    y_l = h11 * inv + np.cos(mus * d)
    dy_l = h12 * inv - mus * np.sin(mus * d)
    y_r = h21 * inv - right * sinc_array(mus * right)
    dy_r = h22 * inv + np.cos(mus * right)
    return a * y_l * dy_r - dy_l * y_r / a


def sample_norm(table: SampleTable, which: HFunction) -> float:
    """Riemann-sum estimate of ||mu^(m-1) h(mu)||_2 over the symmetric samples."""
    cfg = table.cfg
    nodes = np.asarray(table.nodes)
    weighted = nodes ** (cfg.m - 1) * table.samples(which)
    # j and -j contribute equally; j = 0 contributes nothing since m >= 2
    return math.sqrt(2.0 * cfg.spacing * float(np.sum(weighted[1:] ** 2)))


def truncation_bound(table: SampleTable, which: HFunction, mu: float) -> float:
    """Upper bound on |h(mu) - h^[N](mu)| inside the band.

    The bound carries the factor |sin(sigma mu)| of the cardinal series with
    spacing pi / sigma, which vanishes at the nodes where the truncated series
    is exact. This departs from the commonly printed |sin mu|, which is the
    special case sigma = 1.
    """
    cfg = table.cfg
    _check_band(table, np.asarray([mu]))
    edge, k = cfg.band_edge, cfg.m - 1
    c = sample_norm(table, which)
    head = abs(math.sin(cfg.sigma * mu)) * c / (math.pi * cfg.spacing**k * math.sqrt(1 - 4.0**-k))
    tail = 1 / math.sqrt(edge - abs(mu)) + 1 / math.sqrt(edge + abs(mu))
    return head * tail / (cfg.N + 1) ** k


def decay_scale(cfg: SamplingConfig, mu: float) -> float:
    """|sinc(theta mu)|^-m (N+1)^-(m-1), the shape of the B_N error."""
    return abs(sinc(cfg.theta * mu)) ** -cfg.m / (cfg.N + 1) ** (cfg.m - 1)


def fit_decay_constant(
    table: SampleTable, p: ProblemSpec, ivp_cfg: IvpConfig, mus: Sequence[float]
) -> float:
    """Smallest C with |Delta(mu) - B_N(mu)| <= C decay_scale(mu) on the given points.

    Delta is computed by direct integration at ivp_cfg; points where the
    regularizer is singular are skipped.
    """
    from slrsm.services.oracle import delta_direct  # noqa: PLC0415

    q = parse_potential(p.q_source)
    fitted = 0.0
    for mu in mus:
        try:
            approx = characteristic_B_N(table, p.a, mu)
        except SingularRegularizerError:
            continue
        exact = delta_direct(p, mu, ivp_cfg, q=q)
        fitted = max(fitted, abs(exact - approx) / decay_scale(table.cfg, mu))
    logger.debug(f"Fitted decay constant C={fitted:.6g} over {len(mus)} points")
    return fitted
