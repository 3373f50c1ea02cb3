import numpy as np
from pydantic import Field

from slrsm.schemas.common import FrozenModel


class EigenGrid(FrozenModel):
    """Samples of one side of a piecewise eigenfunction."""

    x: list[float]
    y: list[float]
    dy: list[float]

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.asarray(self.x), np.asarray(self.y), np.asarray(self.dy)

    def scaled(self, factor: float) -> "EigenGrid":
        return EigenGrid(
            x=self.x, y=[factor * v for v in self.y], dy=[factor * v for v in self.dy]
        )


class Eigenpair(FrozenModel):
    index: int = Field(ge=1)
    mu: float
    eigenvalue: float
    alpha: float = Field(description="Scale of the right base solution")
    alpha_check: float = Field(description="alpha from the other transmission condition")
    grid_left: EigenGrid
    grid_right: EigenGrid
    l2_norm: float
