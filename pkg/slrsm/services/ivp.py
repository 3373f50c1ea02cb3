"""Fehlberg 4(5) integration of u' = v, v' = (q(x) - mu^2) u.

The 4th order solution is propagated, the difference to the embedded 5th order
solution is the local error estimate. Step endpoints are forced onto the
requested output abscissae instead of interpolating.
"""

import math
from collections.abc import Callable, Sequence

from loguru import logger

from slrsm.core.errors import MaxStepsExceededError, NonFiniteStateError, StepSizeUnderflowError
from slrsm.schemas.ivp import IvpConfig, IvpState

# Fehlberg tableau
C2, C3, C4, C5, C6 = 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2
A21 = 1 / 4
A31, A32 = 3 / 32, 9 / 32
A41, A42, A43 = 1932 / 2197, -7200 / 2197, 7296 / 2197
A51, A52, A53, A54 = 439 / 216, -8.0, 3680 / 513, -845 / 4104
A61, A62, A63, A64, A65 = -8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40

# 4th order weights
B1, B3, B4, B5 = 25 / 216, 1408 / 2565, 2197 / 4104, -1 / 5

# 5th minus 4th order weights
E1, E3, E4, E5, E6 = 1 / 360, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55

SAFETY = 0.9
MIN_FACTOR = 0.1
MAX_FACTOR = 5.0

type Potential = Callable[[float], float]


def fehlberg_step(
    q: Potential, mu_sq: float, x: float, u: float, v: float, h: float
) -> tuple[float, float, float, float]:
    """One Fehlberg step of signed size h.

    Returns:
        (u4, v4, err_u, err_v): 4th order state and the 5th - 4th order difference.
    """
    k1u = v
    k1v = (q(x) - mu_sq) * u

    u2 = u + h * A21 * k1u
    v2 = v + h * A21 * k1v
    k2u = v2
    k2v = (q(x + C2 * h) - mu_sq) * u2

    u3 = u + h * (A31 * k1u + A32 * k2u)
    v3 = v + h * (A31 * k1v + A32 * k2v)
    k3u = v3
    k3v = (q(x + C3 * h) - mu_sq) * u3

    u4 = u + h * (A41 * k1u + A42 * k2u + A43 * k3u)
    v4 = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
    k4u = v4
    k4v = (q(x + C4 * h) - mu_sq) * u4

    u5 = u + h * (A51 * k1u + A52 * k2u + A53 * k3u + A54 * k4u)
    v5 = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
    k5u = v5
    k5v = (q(x + C5 * h) - mu_sq) * u5

    u6 = u + h * (A61 * k1u + A62 * k2u + A63 * k3u + A64 * k4u + A65 * k5u)
    v6 = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
    k6u = v6
    k6v = (q(x + C6 * h) - mu_sq) * u6

    u_new = u + h * (B1 * k1u + B3 * k3u + B4 * k4u + B5 * k5u)
    v_new = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v)
    err_u = h * (E1 * k1u + E3 * k3u + E4 * k4u + E5 * k5u + E6 * k6u)
    err_v = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v)
    return u_new, v_new, err_u, err_v


def _ordered_stops(
    x_from: float, x_to: float, output_grid: Sequence[float], span: float
) -> list[float]:
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    slack = 1e-12 * span
    for point in output_grid:
        if not lo - slack <= point <= hi + slack:
            msg = f"Output point {point!r} lies outside [{lo!r}, {hi!r}]"
            raise ValueError(msg)
    return sorted({min(max(p, lo), hi) for p in output_grid}, reverse=x_to < x_from)


def integrate(
    q: Potential,
    mu_sq: float,
    x_from: float,
    x_to: float,
    init: tuple[float, float],
    cfg: IvpConfig | None = None,
    output_grid: Sequence[float] = (),
    fixed_step: float | None = None,
) -> tuple[IvpState, list[IvpState]]:
    """Integrate from x_from to x_to, in either direction.

    Args:
        q: Potential, called with a float abscissa.
        mu_sq: Spectral parameter mu^2.
        x_from: Start abscissa, where init holds.
        x_to: End abscissa.
        init: (u, v) at x_from.
        cfg: Tolerances and step limits, defaults to IvpConfig().
        output_grid: Abscissae at which states are recorded, each hit exactly by a step end.
        fixed_step: If given, take constant steps of this size without error control.

    Returns:
        Final state at x_to and the states at the output grid, sorted by ascending x.
    """
    if x_from == x_to:
        msg = "Integration interval is empty"
        raise ValueError(msg)

    cfg = cfg or IvpConfig()
    span = abs(x_to - x_from)
    direction = 1.0 if x_to > x_from else -1.0
    h, h_min = cfg.step_bounds(span)
    if fixed_step is not None:
        h = fixed_step
    abs_tol, rel_tol, max_steps = cfg.abs_tol, cfg.rel_tol, cfg.max_steps

    stops = _ordered_stops(x_from, x_to, output_grid, span)
    x, (u, v) = x_from, init
    trajectory: list[IvpState] = []
    steps = 0

    for target, record in [*((s, True) for s in stops), (x_to, False)]:
        while x != target:
            dist = abs(target - x)
            land = h >= dist * (1 - 1e-12)
            step = dist if land else h

            steps += 1
            if steps > max_steps:
                msg = f"More than {max_steps} steps integrating {x_from!r} -> {x_to!r}"
                raise MaxStepsExceededError(msg)

            u_new, v_new, err_u, err_v = fehlberg_step(q, mu_sq, x, u, v, direction * step)
            if not (math.isfinite(u_new) and math.isfinite(v_new)):
                msg = f"Non-finite state at x={x!r} with mu^2={mu_sq!r}"
                raise NonFiniteStateError(msg)

            if fixed_step is not None:
                ratio = 0.0
            else:
                scale_u = abs_tol + rel_tol * max(abs(u), abs(u_new))
                scale_v = abs_tol + rel_tol * max(abs(v), abs(v_new))
                ratio = max(abs(err_u) / scale_u, abs(err_v) / scale_v)

            if ratio <= 1.0:
                x = target if land else x + direction * step
                u, v = u_new, v_new
                if fixed_step is None:
                    factor = (
                        MAX_FACTOR
                        if ratio == 0.0
                        else min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * ratio**-0.2))
                    )
                    h = max(h, step * factor) if land else step * factor
            else:
                h = step * max(MIN_FACTOR, SAFETY * ratio**-0.2)
                if h < h_min:
                    msg = f"Step {h!r} below h_min={h_min!r} at x={x!r} with mu^2={mu_sq!r}"
                    raise StepSizeUnderflowError(msg)

        if record:
            trajectory.append(IvpState(x=x, u=u, v=v))

    logger.debug(f"Integrated {x_from:.6g} -> {x_to:.6g} at mu^2={mu_sq:.6g} in {steps} steps")
    trajectory.sort(key=lambda state: state.x)
    return IvpState(x=x, u=u, v=v), trajectory
