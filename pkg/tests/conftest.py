from collections.abc import Callable
from functools import cache
from pathlib import Path

import pytest

from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.problem import ProblemSpec
from slrsm.schemas.sampling import SampleTable, SamplingConfig
from slrsm.services.sampling import build_sample_table

SMALL_N = 16
SMALL_M = 4

# Small q = 0 tables are built tighter than the default so closed forms hold to 1e-10
TIGHT_IVP = IvpConfig(abs_tol=1e-14, rel_tol=1e-14)


@cache
def _small_zero_table(d: float) -> SampleTable:
    problem = ProblemSpec(q_source="0", a=2.0, d=d)
    cfg = SamplingConfig(N=SMALL_N, m=SMALL_M, d=d)
    return build_sample_table(problem, cfg, TIGHT_IVP, workers=1)


@pytest.fixture(scope="session")
def zero_tables() -> Callable[[float], SampleTable]:
    """q = 0 tables on a short band by interface point d, built once per session."""
    return _small_zero_table


@pytest.fixture(scope="session")
def zero_table(zero_tables: Callable[[float], SampleTable]) -> SampleTable:
    return zero_tables(1.0)


@pytest.fixture(scope="session")
def linear_problem() -> ProblemSpec:
    return ProblemSpec(q_source="x", a=2.0, d=1.0, label="linear potential")


@pytest.fixture(scope="session")
def linear_zeros() -> tuple[float, ...]:
    """Published sampled zeros for q(x) = x, a = 2, d = 1, N = 40, m = 6."""
    return (1.227885469249, 1.837493847255, 2.683968124476, 3.856617447367)


@pytest.fixture(scope="session")
def linear_table(linear_problem: ProblemSpec) -> SampleTable:
    cfg = SamplingConfig(N=40, m=6, d=linear_problem.d)
    return build_sample_table(linear_problem, cfg, IvpConfig(), workers=1)


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Write a TOML run configuration into tmp_path and return its path."""

    def _write(name: str = "run.toml", **values: object) -> Path:
        settings: dict[str, object] = {
            "q": "0",
            "a": 1.0,
            "d": 1.5,
            "N": SMALL_N,
            "m": SMALL_M,
            "mu_max": 5.0,
            "grid_pts": 65,
            "output_dir": str(tmp_path / "out"),
            "cache_dir": str(tmp_path / "cache"),
        }
        settings.update(values)
        lines = []
        for key, value in settings.items():
            if isinstance(value, bool):
                lines.append(f"{key} = {str(value).lower()}")
            elif isinstance(value, str):
                lines.append(f'{key} = "{value}"')
            else:
                lines.append(f"{key} = {value!r}")
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
