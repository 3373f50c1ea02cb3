import time
import tomllib
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

from loguru import logger
from pydantic import ValidationError

from slrsm.core.enums import Phase
from slrsm.core.errors import ConfigError, PhaseError
from slrsm.schemas.eigen import Eigenpair
from slrsm.schemas.oracle import OracleResult
from slrsm.schemas.problem import RunConfig
from slrsm.schemas.report import ComparisonRow, Diagnostics, EigenSummary, RunInfo, RunReport
from slrsm.schemas.roots import ScanResult
from slrsm.schemas.sampling import SampleTable
from slrsm.services.cache import TableCache, problem_hash
from slrsm.services.eigen import assemble_eigenfunction, gram_matrix, jump_ratios, residual_check
from slrsm.services.export import compare_roots, write_outputs
from slrsm.services.expr import parse_potential
from slrsm.services.oracle import find_zeros_direct
from slrsm.services.roots import estimate_errors, scan_and_refine
from slrsm.services.sampling import build_sample_table


def load_config(path: Path) -> RunConfig:
    """Read and validate a TOML run configuration."""
    if not path.is_file():
        msg = f"Config file {path} does not exist"
        raise ConfigError(msg)
    try:
        with path.open("rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as e:
        msg = f"Config file {path} is not valid TOML: {e}"
        raise ConfigError(msg) from e
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        errors = [
            {"loc": ".".join(str(part) for part in err["loc"]) or "config", "msg": err["msg"]}
            for err in e.errors()
        ]
        msg = f"Invalid config file {path}"
        raise ConfigError(msg, errors) from e


class RunService:
    """Runs the sampling pipeline for one configuration."""

    def __init__(self, config: RunConfig, cache: TableCache | None = None) -> None:
        self.config = config
        self.cache = cache or TableCache(config.cache_dir)
        self.timings: dict[str, float] = {}
        self.cache_hit = False

    @contextmanager
    def _phase(self, phase: Phase) -> Iterator[None]:
        logger.info(f"Phase {phase} started")
        start = time.perf_counter()
        try:
            yield
        except PhaseError:
            raise
        except Exception as e:
            logger.error(f"Phase {phase} failed: {e}")
            raise PhaseError(phase, e) from e
        finally:
            self.timings[phase] = self.timings.get(phase, 0.0) + time.perf_counter() - start

    def sample_table(self) -> SampleTable:
        """Load the sample table from the cache, or build and store it."""
        cfg = self.config
        with self._phase(Phase.PARSE):
            parse_potential(cfg.q)
        with self._phase(Phase.SAMPLING):
            key = problem_hash(cfg.problem, cfg.ivp, cfg.sampling)
            table = self.cache.load(key)
            self.cache_hit = table is not None
            if table is None:
                table = build_sample_table(cfg.problem, cfg.sampling, cfg.ivp)
                self.cache.store(table)
        return table

    def roots(self, table: SampleTable) -> ScanResult:
        cfg = self.config
        with self._phase(Phase.ROOTS):
            return scan_and_refine(table, cfg.a, cfg.search_limit, cfg.scan_step, cfg.tol)

    def oracle(self) -> OracleResult:
        cfg = self.config
        with self._phase(Phase.ORACLE):
            return find_zeros_direct(
                cfg.problem, cfg.search_limit, cfg.oracle_scan_step, cfg.oracle_tol, cfg.oracle_ivp
            )

    def comparison(self) -> tuple[list[ComparisonRow], list[float]]:
        """Sampled zeros next to the oracle zeros."""
        scan = self.roots(self.sample_table())
        return compare_roots(scan.roots, self.oracle())

    def converge(self, truncations: list[int]) -> dict[int, list[float]]:
        """Zeros of B_N for several truncation indices, everything else fixed."""
        zeros: dict[int, list[float]] = {}
        for n in truncations:
            config = RunConfig.model_validate({**self.config.model_dump(), "N": n})
            service = RunService(config, self.cache)
            table = service.sample_table()
            limit = min(self.config.search_limit, table.cfg.search_limit)
            with service._phase(Phase.ROOTS):
                scan = scan_and_refine(
                    table, self.config.a, limit, self.config.scan_step, self.config.tol
                )
            zeros[n] = [root.mu for root in scan.roots]
            logger.info(f"N={n}: {len(zeros[n])} zeros")
        return zeros

    def run(self, write: bool = True) -> tuple[RunReport, list[Eigenpair]]:
        """Full pipeline, writing every output file unless write is False."""
        cfg = self.config
        table = self.sample_table()
        scan = self.roots(table)

        with self._phase(Phase.ESTIMATE):
            c4, roots = estimate_errors(
                table,
                cfg.problem,
                scan.roots,
                cfg.oracle_ivp,
                cfg.search_limit,
                table_ivp=cfg.ivp,
            )

        oracle = None
        rows: list[ComparisonRow] = []
        unmatched: list[float] = []
        if cfg.run_oracle:
            oracle = self.oracle()
            rows, unmatched = compare_roots(roots, oracle)

        with self._phase(Phase.EIGEN):
            pairs = [
                assemble_eigenfunction(cfg.problem, root.mu, cfg.grid_pts, cfg.ivp, index=k)
                for k, root in enumerate(roots, start=1)
            ]
            summaries = [self._summarize(pair) for pair in pairs]

        with self._phase(Phase.GRAM):
            gram = gram_matrix(pairs)

        report = RunReport(
            problem=cfg.problem,
            sampling=cfg.sampling,
            ivp=cfg.ivp,
            mu_max=cfg.search_limit,
            roots=roots,
            oracle=oracle,
            table=rows,
            eigen=summaries,
            gram=gram.tolist(),
            diagnostics=Diagnostics(
                skipped=scan.skipped,
                tangential=scan.tangential,
                decay_constant=c4,
                unmatched_roots=unmatched,
            ),
            run_info=RunInfo(timings=dict(self.timings), cache_hit=self.cache_hit),
        )

        if write:
            with self._phase(Phase.WRITE):
                written = write_outputs(report, pairs, cfg.output_dir)
            logger.info(f"Wrote {len(written)} files to {cfg.output_dir}")
        return report, pairs

    def _summarize(self, pair: Eigenpair) -> EigenSummary:
        value_jump, slope_jump = jump_ratios(pair)
        return EigenSummary(
            index=pair.index,
            mu=pair.mu,
            eigenvalue=pair.eigenvalue,
            alpha=pair.alpha,
            alpha_check=pair.alpha_check,
            l2_norm=pair.l2_norm,
            residual=residual_check(self.config.problem, pair),
            value_jump=value_jump,
            slope_jump=slope_jump,
        )
