from pydantic import Field

from slrsm.schemas.common import SCHEMA_VERSION, FrozenModel
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.oracle import OracleResult
from slrsm.schemas.problem import ProblemSpec
from slrsm.schemas.roots import RootResult
from slrsm.schemas.sampling import SamplingConfig


class ComparisonRow(FrozenModel):
    """One line of the oracle-versus-sampling comparison table."""

    index: int
    oracle_mu: float
    rsm_mu: float
    abs_err: float = Field(description="|oracle_mu - rsm_mu|")
    rel_err: float = Field(description="abs_err / oracle_mu")


class EigenSummary(FrozenModel):
    index: int
    mu: float
    eigenvalue: float
    alpha: float
    alpha_check: float
    l2_norm: float
    residual: float
    value_jump: float = Field(description="y(d+0) / y(d-0)")
    slope_jump: float = Field(description="y'(d+0) / y'(d-0)")


class Diagnostics(FrozenModel):
    skipped: list[float] = Field(default_factory=list)
    tangential: list[float] = Field(default_factory=list)
    decay_constant: float | None = None
    unmatched_roots: list[float] = Field(default_factory=list)


class RunInfo(FrozenModel):
    """Run-dependent facts, left out of determinism comparisons."""

    timings: dict[str, float] = Field(default_factory=dict)
    cache_hit: bool = False


class RunReport(FrozenModel):
    schema_version: int = SCHEMA_VERSION
    problem: ProblemSpec
    sampling: SamplingConfig
    ivp: IvpConfig
    mu_max: float
    roots: list[RootResult]
    oracle: OracleResult | None = None
    table: list[ComparisonRow] = Field(default_factory=list)
    eigen: list[EigenSummary] = Field(default_factory=list)
    gram: list[list[float]] = Field(default_factory=list)
    diagnostics: Diagnostics = Field(default_factory=Diagnostics)
    run_info: RunInfo = Field(default_factory=RunInfo)
