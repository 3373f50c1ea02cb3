import math
from typing import Any

import numpy as np
from pydantic import Field, computed_field, model_validator

from slrsm.core.enums import HFunction
from slrsm.schemas.common import SCHEMA_VERSION, FrozenModel


class SamplingConfig(FrozenModel):
    """Truncation index, sinc power and the derived band of the cardinal series."""

    N: int = Field(ge=8, description="Truncation index, samples j = -N..N")
    m: int = Field(ge=2, description="Power of the sinc regularizer")
    d: float = Field(gt=0, lt=math.pi)
    theta: float = Field(gt=0, description="Regularizer scale, defaults to sigma0 / (N - m)")

    @model_validator(mode="before")
    @classmethod
    def _default_theta(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        # sigma0 and sigma are derived; drop them when reloading a dumped config
        data = {k: v for k, v in data.items() if k not in {"sigma0", "sigma"}}
        if data.get("theta") is None:
            n, m, d = data.get("N"), data.get("m"), data.get("d")
            if isinstance(n, int) and isinstance(m, int) and isinstance(d, int | float):
                if n <= m:
                    msg = "N must exceed m when theta is not given"
                    raise ValueError(msg)
                data = {**data, "theta": max(d, math.pi - d) / (n - m)}
        return data

    @computed_field
    @property
    def sigma0(self) -> float:
        return max(self.d, math.pi - self.d)

    @computed_field
    @property
    def sigma(self) -> float:
        return self.sigma0 + self.m * self.theta

    @property
    def spacing(self) -> float:
        return math.pi / self.sigma

    @property
    def band_edge(self) -> float:
        """N pi / sigma, the edge of the reliable reconstruction band."""
        return self.N * math.pi / self.sigma

    @property
    def search_limit(self) -> float:
        return 0.9 * self.band_edge

    @property
    def first_singularity(self) -> float:
        """pi / theta, the first zero of the regularizer."""
        return math.pi / self.theta

    def node_values(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.spacing


class BoundaryQuad(FrozenModel):
    """Boundary values of the two base solutions at d."""

    mu: float
    yL: float = Field(description="y_L(d, mu)")
    dyL: float = Field(description="y_L'(d, mu)")
    yR: float = Field(description="y_R(d, mu)")
    dyR: float = Field(description="y_R'(d, mu)")

    @model_validator(mode="after")
    def _check_nontrivial(self) -> "BoundaryQuad":
        # A nontrivial solution cannot vanish together with its derivative
        if self.yL == 0 and self.dyL == 0:
            msg = "left base solution vanishes with its derivative at d"
            raise ValueError(msg)
        if self.yR == 0 and self.dyR == 0:
            msg = "right base solution vanishes with its derivative at d"
            raise ValueError(msg)
        return self


class GrowthConstants(FrozenModel):
    """Constants of the growth estimates for the base solutions on real mu."""

    gamma0: float = 1.72
    q_abs_integral: float
    gamma1: float
    gamma5: float
    gamma6: float
    gamma7: float


class SampleTable(FrozenModel):
    """Regularized boundary functions sampled at mu_j = j pi / sigma, j = 0..N."""

    schema_version: int = SCHEMA_VERSION
    cfg: SamplingConfig
    nodes: list[float]
    h11: list[float]
    h12: list[float]
    h21: list[float]
    h22: list[float]
    problem_hash: str

    @model_validator(mode="after")
    def _check_lengths(self) -> "SampleTable":
        expected = self.cfg.N + 1
        for name in ("nodes", *HFunction):
            if len(getattr(self, name)) != expected:
                msg = f"{name} must hold {expected} values"
                raise ValueError(msg)
        return self

    def samples(self, which: HFunction) -> np.ndarray:
        return np.asarray(getattr(self, which.value), dtype=float)
