import math
from pathlib import Path
from typing import Self

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from slrsm.schemas.common import FrozenModel
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.sampling import SamplingConfig


class ProblemSpec(FrozenModel):
    """-y'' + q y = mu^2 y on (0, pi), y'(0) = 0 = y(pi), jumps a and 1/a at d."""

    q_source: str = Field(min_length=1, description="Potential q(x) as an expression in x")
    a: float = Field(gt=0, description="Jump factor of y across d")
    d: float = Field(gt=0, lt=math.pi, description="Interior transmission point")
    label: str = ""

    @model_validator(mode="after")
    def _warn_continuous(self) -> Self:
        if self.a == 1:
            logger.warning("a = 1 makes the transmission conditions trivial (continuous problem)")
        return self


class RunConfig(BaseModel):
    """Schema of a run configuration file."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # Problem
    q: str = Field(min_length=1)
    a: float = Field(gt=0)
    d: float = Field(gt=0, lt=math.pi)
    label: str = ""

    # Sampling
    N: int = Field(default=40, ge=8)
    m: int = Field(default=6, ge=2)
    theta: float | None = Field(default=None, gt=0)

    # Root search
    mu_max: float | None = Field(default=None, gt=0)
    scan_step: float = Field(default=0.01, gt=0)
    tol: float = Field(default=1e-12, gt=0)

    # Integrator
    abs_tol: float = Field(default=1e-12, gt=0)
    rel_tol: float = Field(default=1e-12, gt=0)

    # Oracle
    run_oracle: bool = True
    oracle_scan_step: float = Field(default=0.05, gt=0)
    oracle_tol: float = Field(default=1e-12, gt=0)
    oracle_abs_tol: float = Field(default=1e-13, gt=0)

    # Eigenfunctions
    grid_pts: int = Field(default=513, ge=16)

    # Output
    output_dir: Path = Path("output")
    cache_dir: Path | None = None

    @model_validator(mode="after")
    def _check_band(self) -> Self:
        if self.m >= self.N:
            msg = "m must be smaller than N"
            raise ValueError(msg)
        return self

    @property
    def problem(self) -> ProblemSpec:
        return ProblemSpec(q_source=self.q, a=self.a, d=self.d, label=self.label)

    @property
    def sampling(self) -> SamplingConfig:
        return SamplingConfig(N=self.N, m=self.m, d=self.d, theta=self.theta)

    @property
    def ivp(self) -> IvpConfig:
        return IvpConfig(abs_tol=self.abs_tol, rel_tol=self.rel_tol)

    @property
    def oracle_ivp(self) -> IvpConfig:
        return IvpConfig(abs_tol=self.oracle_abs_tol, rel_tol=self.oracle_abs_tol)

    @property
    def search_limit(self) -> float:
        return self.mu_max if self.mu_max is not None else self.sampling.search_limit
