from typing import Self

from pydantic import Field, model_validator

from slrsm.schemas.common import FrozenModel


class IvpState(FrozenModel):
    """Solution value and derivative at one abscissa."""

    x: float
    u: float = Field(description="Solution value y")
    v: float = Field(description="Derivative y'")


class IvpConfig(FrozenModel):
    """Tolerances and step limits of the Fehlberg 4(5) integrator."""

    abs_tol: float = Field(default=1e-12, gt=0)
    rel_tol: float = Field(default=1e-12, gt=0)
    h_init: float | None = Field(
        default=None, gt=0, description="Initial step, defaults to |to - from| / 100"
    )
    h_min: float | None = Field(
        default=None, gt=0, description="Smallest step, defaults to 1e-14 |to - from|"
    )
    max_steps: int = Field(default=1_000_000, ge=1)

    @model_validator(mode="after")
    def _check_steps(self) -> Self:
        if self.h_init is not None and self.h_min is not None and self.h_min >= self.h_init:
            msg = "h_min must be smaller than h_init"
            raise ValueError(msg)
        return self

    def step_bounds(self, span: float) -> tuple[float, float]:
        """Resolve (h_init, h_min) for an interval of length span."""
        span = abs(span)
        h_init = self.h_init if self.h_init is not None else span / 100
        h_min = self.h_min if self.h_min is not None else 1e-14 * span
        return min(h_init, span), h_min

    def tightened(self, factor: float = 100.0) -> "IvpConfig":
        return self.model_copy(
            update={"abs_tol": self.abs_tol / factor, "rel_tol": self.rel_tol / factor}
        )
