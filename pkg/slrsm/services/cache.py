import hashlib
import json
import os
import tempfile
from pathlib import Path

from loguru import logger
from pydantic import ValidationError

from slrsm.core.config import Config
from slrsm.schemas.common import SCHEMA_VERSION
from slrsm.schemas.ivp import IvpConfig
from slrsm.schemas.problem import ProblemSpec
from slrsm.schemas.sampling import SampleTable, SamplingConfig


def problem_hash(problem: ProblemSpec, ivp_cfg: IvpConfig, cfg: SamplingConfig) -> str:
    """Hash of everything a sample table depends on. The label is cosmetic and left out."""
    payload = {
        "schema_version": SCHEMA_VERSION,
        "q_source": problem.q_source,
        "a": problem.a,
        "d": problem.d,
        "sampling": cfg.model_dump(mode="json"),
        "ivp": ivp_cfg.model_dump(mode="json"),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def resolve_cache_dir(configured: Path | None = None) -> Path:
    """SLRSM_CACHE_DIR wins over the configured directory, which wins over the default."""
    current = Config()
    if "cache_dir" in current.model_fields_set:
        return current.cache_dir
    return configured or current.cache_dir


def atomic_write_text(path: Path, text: str) -> None:
    """Write to a temporary file next to path, then rename over it."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        Path(tmp_name).replace(path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


class TableCache:
    """Sample tables stored as versioned JSON documents named by their problem hash."""

    def __init__(self, cache_dir: Path | None = None) -> None:
        self.cache_dir = resolve_cache_dir(cache_dir)

    def path_for(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def load(self, key: str) -> SampleTable | None:
        path = self.path_for(key)
        if not path.is_file():
            logger.info(f"Sample table cache miss: {key[:12]}")
            return None
        try:
            table = SampleTable.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as e:
            logger.warning(f"Discarding unreadable cache entry {path}: {e}")
            return None
        if table.problem_hash != key or table.schema_version != SCHEMA_VERSION:
            logger.warning(f"Discarding stale cache entry {path}")
            return None
        logger.info(f"Sample table cache hit: {key[:12]}")
        return table

    def store(self, table: SampleTable) -> Path:
        path = self.path_for(table.problem_hash)
        atomic_write_text(path, table.model_dump_json(indent=2))
        logger.debug(f"Stored sample table {path}")
        return path

    def clear(self) -> int:
        """Delete every cached table, returning how many were removed."""
        if not self.cache_dir.is_dir():
            return 0
        removed = 0
        for path in self.cache_dir.glob("*.json"):
            path.unlink()
            removed += 1
        logger.info(f"Removed {removed} cached sample tables from {self.cache_dir}")
        return removed
