import math

import numpy as np
import pytest
from pydantic import ValidationError

from slrsm.core.errors import MaxStepsExceededError, NonFiniteStateError, StepSizeUnderflowError
from slrsm.schemas.ivp import IvpConfig
from slrsm.services.expr import parse_potential
from slrsm.services.ivp import integrate

ZERO = parse_potential("0")
LINEAR = parse_potential("x")


def test_cosine_solution():
    final, _ = integrate(ZERO, 1.0, 0.0, math.pi, (1.0, 0.0))
    assert final.x == math.pi
    assert final.u == pytest.approx(-1.0, abs=1e-10)
    assert final.v == pytest.approx(0.0, abs=1e-9)


def test_backward_integration():
    final, _ = integrate(ZERO, 0.25, math.pi, 1.0, (0.0, 1.0))
    assert final.x == 1.0
    assert final.u == pytest.approx(-math.sin(0.5 * (math.pi - 1.0)) / 0.5, abs=1e-9)
    assert final.v == pytest.approx(math.cos(0.5 * (math.pi - 1.0)), abs=1e-9)


def test_output_grid_is_hit_exactly():
    grid = np.linspace(0.0, 1.0, 11).tolist()
    _, states = integrate(ZERO, 0.25, 0.0, 1.0, (1.0, 0.0), output_grid=grid)
    assert [s.x for s in states] == grid
    for state in states:
        assert state.u == pytest.approx(math.cos(0.5 * state.x), abs=1e-9)


def test_backward_grid_is_sorted_ascending():
    grid = np.linspace(1.0, math.pi, 9).tolist()
    _, states = integrate(ZERO, 0.0, math.pi, 1.0, (0.0, 1.0), output_grid=grid)
    assert [s.x for s in states] == grid
    assert states[-1].u == 0.0
    for state in states:
        assert state.u == pytest.approx(-(math.pi - state.x), abs=1e-12)


def test_fixed_step_order():
    steps = [math.pi / 50, math.pi / 100, math.pi / 200]
    errors = []
    for h in steps:
        final, _ = integrate(ZERO, 1.0, 0.0, math.pi, (1.0, 0.0), fixed_step=h)
        errors.append(math.hypot(final.u + 1.0, final.v))
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    assert slope >= 3.8


def test_direction_symmetry():
    mu_sq = 1.5
    forward, _ = integrate(LINEAR, mu_sq, 0.0, 1.0, (1.0, 0.0))
    back, _ = integrate(LINEAR, mu_sq, 1.0, 0.0, (forward.u, forward.v))
    assert back.u == pytest.approx(1.0, abs=1e-9)
    assert back.v == pytest.approx(0.0, abs=1e-9)


def test_wronskian_is_conserved():
    mu_sq = 2.0
    first, _ = integrate(LINEAR, mu_sq, 0.0, 2.0, (1.0, 0.0))
    second, _ = integrate(LINEAR, mu_sq, 0.0, 2.0, (0.0, 1.0))
    assert first.u * second.v - second.u * first.v == pytest.approx(1.0, abs=1e-9)


def test_tighter_tolerance_agrees():
    mu_sq = 1.22788546912**2
    loose, _ = integrate(LINEAR, mu_sq, 0.0, 1.0, (1.0, 0.0))
    tight, _ = integrate(LINEAR, mu_sq, 0.0, 1.0, (1.0, 0.0), IvpConfig().tightened())
    assert loose.u == pytest.approx(tight.u, abs=1e-9)
    assert loose.v == pytest.approx(tight.v, abs=1e-9)


def test_empty_interval():
    with pytest.raises(ValueError, match="empty"):
        integrate(ZERO, 1.0, 1.0, 1.0, (1.0, 0.0))


def test_output_point_outside_interval():
    with pytest.raises(ValueError, match="outside"):
        integrate(ZERO, 1.0, 0.0, 1.0, (1.0, 0.0), output_grid=[1.5])


def test_max_steps():
    with pytest.raises(MaxStepsExceededError):
        integrate(ZERO, 1.0, 0.0, math.pi, (1.0, 0.0), IvpConfig(max_steps=5))


def test_non_finite_state():
    with pytest.raises(NonFiniteStateError):
        integrate(parse_potential("1e300"), 0.0, 0.0, 1.0, (1.0, 0.0))


def test_step_size_underflow():
    cfg = IvpConfig(abs_tol=1e-15, rel_tol=1e-15, h_init=1e-3, h_min=5e-4)
    with pytest.raises(StepSizeUnderflowError):
        integrate(ZERO, 1e4, 0.0, 1.0, (1.0, 0.0), cfg)


def test_step_limits_are_validated():
    with pytest.raises(ValidationError):
        IvpConfig(h_init=1e-3, h_min=1e-2)
    assert IvpConfig().step_bounds(2.0) == (0.02, 2e-14)
