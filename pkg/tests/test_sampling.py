import math
from collections.abc import Callable
from functools import cache

import numpy as np
import pytest
from pydantic import ValidationError

from slrsm.core.enums import HFunction
from slrsm.core.errors import OutOfBandError, SingularRegularizerError
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.problem import ProblemSpec
from slrsm.schemas.sampling import SampleTable, SamplingConfig
from slrsm.services.base import solve_quad
from slrsm.services.expr import parse_potential
from slrsm.services.oracle import ORACLE_IVP, closed_form_q0, delta_direct
from slrsm.services.sampling import (
    build_sample_table,
    cardinal_series,
    cardinal_series_many,
    characteristic_B_N,
    characteristic_many,
    decay_scale,
    fit_decay_constant,
    h_values,
    reconstruct_quad,
    sinc,
    sinc_array,
    synthetic_table,
    truncation_bound,
)


def _regularized_test_function(cfg: SamplingConfig) -> Callable[[float], float]:
    """sinc(theta mu)^m sinc(sigma0 mu): exponential type sigma, mu^(m-1) f square integrable."""

    def f(mu: float) -> float:
        return sinc(cfg.theta * mu) ** cfg.m * sinc(cfg.sigma0 * mu)

    return f


def test_sinc_values():
    assert sinc(0.0) == 1.0
    assert sinc(math.pi) == pytest.approx(0.0, abs=1e-15)
    assert sinc(1e-5) == pytest.approx(1 - 1e-10 / 6, abs=1e-18)
    assert sinc(1j) == pytest.approx(math.sinh(1.0), rel=1e-15)
    points = np.array([0.0, 5e-5, 0.3, -2.0, 10.0])
    assert sinc_array(points).tolist() == pytest.approx([sinc(float(z)) for z in points], rel=1e-15)


def test_sampling_config_defaults():
    cfg = SamplingConfig(N=40, m=6, d=1.0)
    assert cfg.sigma0 == math.pi - 1.0
    assert cfg.theta == pytest.approx((math.pi - 1.0) / 34, rel=1e-15)
    assert cfg.sigma == pytest.approx(cfg.sigma0 + 6 * cfg.theta, rel=1e-15)
    assert cfg.spacing == pytest.approx(math.pi / cfg.sigma, rel=1e-15)
    assert cfg.search_limit == pytest.approx(0.9 * cfg.band_edge, rel=1e-15)
    # the default theta puts the first regularizer zero on the band edge
    assert cfg.first_singularity == pytest.approx(cfg.band_edge, rel=1e-12)


def test_sampling_config_reloads_from_dump():
    cfg = SamplingConfig(N=20, m=4, d=2.0)
    assert SamplingConfig.model_validate(cfg.model_dump()) == cfg


def test_sampling_config_needs_n_above_m():
    with pytest.raises(ValidationError):
        SamplingConfig(N=8, m=8, d=1.0)


def test_zero_potential_table_vanishes(zero_table: SampleTable):
    assert len(zero_table.nodes) == zero_table.cfg.N + 1
    assert zero_table.h11[0] == 0.0
    assert zero_table.h12[0] == 0.0
    assert zero_table.h21[0] == pytest.approx(0.0, abs=1e-12)
    assert zero_table.h22[0] == 0.0
    for which in HFunction:
        assert np.max(np.abs(zero_table.samples(which))) < 1e-8


@cache
def _small_linear_table() -> SampleTable:
    problem = ProblemSpec(q_source="x", a=2.0, d=1.0)
    return build_sample_table(problem, SamplingConfig(N=16, m=4, d=1.0), IvpConfig(), workers=1)


def test_table_spot_value():
    table = _small_linear_table()
    cfg = table.cfg
    mu = table.nodes[1]
    quad = solve_quad(parse_potential("x"), mu, 1.0, IvpConfig().tightened())
    assert table.h11[1] == pytest.approx(h_values(quad, cfg)[0], abs=1e-9)

    # cardinal series reproduces every stored sample inside the band
    for which in HFunction:
        samples = table.samples(which)
        for j in range(cfg.N):
            assert cardinal_series(table, which, table.nodes[j]) == samples[j]


def test_reconstruct_at_nodes_matches_direct_quad():
    table = _small_linear_table()
    q = parse_potential("x")
    for j in range(table.cfg.N):
        mu = table.nodes[j]
        quad = reconstruct_quad(table, mu)
        direct = solve_quad(q, mu, 1.0, IvpConfig())
        assert quad.model_dump() == pytest.approx(direct.model_dump(), abs=1e-10)


def test_table_rejects_mismatched_d():
    problem = ProblemSpec(q_source="0", a=2.0, d=1.0)
    with pytest.raises(ValueError, match="does not match"):
        build_sample_table(problem, SamplingConfig(N=16, m=4, d=1.5), IvpConfig())


def test_table_length_is_validated(zero_table: SampleTable):
    data = zero_table.model_dump()
    data["h11"] = data["h11"][:-1]
    with pytest.raises(ValidationError):
        SampleTable.model_validate(data)


def test_cardinal_series_zero_table(zero_table: SampleTable):
    assert cardinal_series(zero_table, HFunction.H11, 0.0) == 0.0


def test_cardinal_series_is_even(zero_table: SampleTable):
    cfg = SamplingConfig(N=40, m=6, d=1.0)
    table = synthetic_table(cfg, _regularized_test_function(cfg))
    for mu in (0.37, 4.1, 20.0):
        assert cardinal_series(table, HFunction.H22, mu) == cardinal_series(
            table, HFunction.H22, -mu
        )
        assert characteristic_B_N(zero_table, 2.0, mu / 10) == characteristic_B_N(
            zero_table, 2.0, -mu / 10
        )


def test_cardinal_series_out_of_band(zero_table: SampleTable):
    with pytest.raises(OutOfBandError):
        cardinal_series(zero_table, HFunction.H11, zero_table.cfg.band_edge * 1.01)


def test_reconstruct_zero_potential(zero_table: SampleTable):
    d = zero_table.cfg.d
    right = math.pi - d
    for mu in (0.0, 0.7, 1.3, 4.2):
        quad = reconstruct_quad(zero_table, mu)
        assert quad.yL == pytest.approx(math.cos(mu * d), abs=1e-10)
        assert quad.dyL == pytest.approx(-mu * math.sin(mu * d), abs=1e-10)
        assert quad.yR == pytest.approx(-right * sinc(mu * right), abs=1e-10)
        assert quad.dyR == pytest.approx(math.cos(mu * right), abs=1e-10)


def test_reconstruct_at_regularizer_zero(zero_table: SampleTable):
    with pytest.raises(SingularRegularizerError):
        reconstruct_quad(zero_table, zero_table.cfg.first_singularity)


def test_characteristic_zero_potential(zero_tables: Callable[[float], SampleTable]):
    # a = 1 collapses the characteristic function to cos(mu pi)
    assert characteristic_B_N(zero_tables(1.5), 1.0, 0.5) == pytest.approx(0.0, abs=1e-10)
    zero_table = zero_tables(1.0)
    expected = closed_form_q0(2.0, 1.0, 1.0)
    assert characteristic_B_N(zero_table, 2.0, 1.0) == pytest.approx(expected, abs=1e-10)


def test_characteristic_many_matches_scalar(zero_table: SampleTable):
    mus = [0.0, 0.4, 1.1, 3.3]
    values = characteristic_many(zero_table, 2.0, mus)
    for mu, value in zip(mus, values, strict=True):
        assert value == pytest.approx(characteristic_B_N(zero_table, 2.0, mu), abs=1e-13)


def test_characteristic_many_marks_singular_points():
    cfg = SamplingConfig(N=16, m=4, d=1.0, theta=0.5)
    table = synthetic_table(cfg, lambda mu: 0.0)
    values = characteristic_many(table, 2.0, [1.0, 2 * math.pi])
    assert math.isfinite(values[0])
    assert math.isnan(values[1])


def test_truncation_bound_vanishes_at_zero():
    cfg = SamplingConfig(N=40, m=6, d=1.0)
    table = synthetic_table(cfg, _regularized_test_function(cfg))
    assert truncation_bound(table, HFunction.H11, 0.0) == 0.0


def test_truncation_bound_dominates_error():
    cfg = SamplingConfig(N=40, m=6, d=1.0)
    f = _regularized_test_function(cfg)
    table = synthetic_table(cfg, f)
    rng = np.random.default_rng(7)
    mus = rng.uniform(-0.8 * cfg.band_edge, 0.8 * cfg.band_edge, 20)
    approx = cardinal_series_many(table, HFunction.H11, mus)
    for mu, value in zip(mus, approx, strict=True):
        error = abs(f(float(mu)) - value)
        bound = truncation_bound(table, HFunction.H11, float(mu))
        assert bound > 0
        assert error <= bound + 1e-14


def test_truncation_bound_shrinks_with_n():
    # a common theta keeps sigma, and so the sampled function, fixed
    coarse = SamplingConfig(N=20, m=6, d=1.0, theta=0.063)
    fine = SamplingConfig(N=40, m=6, d=1.0, theta=0.063)
    f = _regularized_test_function(coarse)
    mu = 10.0
    bound_coarse = truncation_bound(synthetic_table(coarse, f), HFunction.H11, mu)
    bound_fine = truncation_bound(synthetic_table(fine, f), HFunction.H11, mu)
    assert 0 < bound_fine < bound_coarse


@pytest.mark.slow
def test_linear_table_spot_value(linear_table: SampleTable):
    mu = linear_table.nodes[1]
    quad = solve_quad(parse_potential("x"), mu, 1.0, IvpConfig().tightened())
    assert linear_table.h11[1] == pytest.approx(h_values(quad, linear_table.cfg)[0], abs=1e-9)

    # regularized samples decay like (1 + theta mu)^-m; the y_R columns spread wider
    cfg = linear_table.cfg
    growth = (1 + cfg.theta * np.asarray(linear_table.nodes)) ** cfg.m
    spread = {HFunction.H11: 10.0, HFunction.H12: 10.0, HFunction.H21: 500.0, HFunction.H22: 20.0}
    for which in HFunction:
        scaled = np.abs(linear_table.samples(which)) * growth
        assert np.all(np.isfinite(scaled))
        assert np.max(scaled) <= spread[which] * np.median(scaled)

    quad = reconstruct_quad(linear_table, 1.0)
    direct = solve_quad(parse_potential("x"), 1.0, 1.0, ORACLE_IVP)
    assert quad.yL == pytest.approx(direct.yL, abs=1e-8)
    assert quad.dyR == pytest.approx(direct.dyR, abs=1e-8)


@pytest.mark.slow
def test_error_decreases_with_n(linear_problem: ProblemSpec, linear_table: SampleTable):
    coarse_cfg = SamplingConfig(N=20, m=6, d=1.0)
    coarse = build_sample_table(linear_problem, coarse_cfg, IvpConfig(), workers=1)
    mus = np.linspace(0.0, coarse_cfg.search_limit, 50).tolist()

    def max_error(table: SampleTable) -> float:
        return max(
            abs(delta_direct(linear_problem, mu) - characteristic_B_N(table, linear_problem.a, mu))
            for mu in mus
        )

    assert 2 * max_error(linear_table) < max_error(coarse)
    c_coarse = fit_decay_constant(coarse, linear_problem, ORACLE_IVP, mus)
    c_fine = fit_decay_constant(linear_table, linear_problem, ORACLE_IVP, mus)
    assert math.isfinite(c_coarse)
    assert 0 < c_fine <= 8 * c_coarse

    # the fitted envelope still shrinks with N
    for mu in (0.5, 1.0, 2.0, 4.0):
        fine_bound = c_fine * decay_scale(linear_table.cfg, mu)
        assert fine_bound < c_coarse * decay_scale(coarse_cfg, mu)
