from pydantic import Field

from slrsm.schemas.common import FrozenModel


class RootResult(FrozenModel):
    """A refined zero of B_N and its eigenvalue."""

    mu: float = Field(ge=0)
    eigenvalue: float = Field(description="mu squared")
    bracket: tuple[float, float]
    residual: float = Field(description="|B_N(mu)|")
    error_estimate: float | None = Field(
        default=None, description="A-posteriori bound on |mu - exact zero|"
    )


class ScanResult(FrozenModel):
    roots: list[RootResult]
    skipped: list[float] = Field(
        default_factory=list, description="Scan points too close to a regularizer zero"
    )
    tangential: list[float] = Field(
        default_factory=list, description="Exact zeros without a sign change"
    )
