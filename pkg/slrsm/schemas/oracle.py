from typing import Self

from pydantic import model_validator

from slrsm.core.enums import OracleMethod
from slrsm.schemas.common import FrozenModel


class OracleResult(FrozenModel):
    """Reference zeros of the characteristic function, computed without sampling."""

    zeros: list[float]
    scan_step: float
    tol: float
    method: OracleMethod

    @model_validator(mode="after")
    def _check_increasing(self) -> Self:
        if any(b <= a for a, b in zip(self.zeros, self.zeros[1:], strict=False)):
            msg = "zeros must be strictly increasing"
            raise ValueError(msg)
        return self
