import math

import pytest
from pydantic import ValidationError

from slrsm.core.enums import OracleMethod
from slrsm.schemas.oracle import OracleResult
from slrsm.schemas.problem import ProblemSpec
from slrsm.services.oracle import (
    closed_form_q0,
    delta_direct,
    find_zeros_closed_form,
    find_zeros_direct,
)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.0])
def test_closed_form_reduces_to_cosine(d: float):
    for mu in (0.0, 0.3, 1.7, 4.25):
        assert closed_form_q0(1.0, d, mu) == pytest.approx(math.cos(mu * math.pi), abs=1e-14)


def test_closed_form_at_zero():
    assert closed_form_q0(2.0, 1.0, 0.0) == 2.0


def test_delta_direct_zero_potential():
    assert delta_direct(ProblemSpec(q_source="0", a=1.0, d=1.0), 0.5) == pytest.approx(
        0.0, abs=1e-11
    )
    problem = ProblemSpec(q_source="0", a=2.0, d=1.0)
    for mu in (0.0, 1.0, 2.3):
        assert delta_direct(problem, mu) == pytest.approx(closed_form_q0(2.0, 1.0, mu), abs=1e-10)


def test_delta_direct_is_even():
    problem = ProblemSpec(q_source="x", a=2.0, d=1.0)
    for mu in (0.4, 2.2):
        assert delta_direct(problem, mu) == delta_direct(problem, -mu)


def test_find_zeros_zero_potential():
    result = find_zeros_direct(ProblemSpec(q_source="0", a=1.0, d=1.0), 5.0)
    assert result.method == OracleMethod.DIRECT_SHOOTING
    assert result.zeros == pytest.approx([0.5, 1.5, 2.5, 3.5, 4.5], abs=1e-10)


def test_direct_matches_closed_form():
    direct = find_zeros_direct(ProblemSpec(q_source="0", a=2.0, d=1.0), 4.0)
    closed = find_zeros_closed_form(2.0, 1.0, 4.0)
    assert closed.method == OracleMethod.CLOSED_FORM_Q0
    assert direct.zeros == pytest.approx(closed.zeros, abs=1e-10)


def test_zeros_must_increase():
    with pytest.raises(ValidationError):
        OracleResult(
            zeros=[1.0, 1.0], scan_step=0.05, tol=1e-12, method=OracleMethod.DIRECT_SHOOTING
        )


@pytest.mark.slow
def test_linear_potential(linear_problem: ProblemSpec, linear_zeros: tuple[float, ...]):
    assert abs(delta_direct(linear_problem, 1.22788546912)) <= 1e-9
    result = find_zeros_direct(linear_problem, 4.0)
    assert result.zeros == pytest.approx(list(linear_zeros), abs=1e-8)
