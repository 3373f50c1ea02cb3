from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="SLRSM_")

    env: Literal["prod", "dev"] = "prod"

    # Sample table cache, overridden by SLRSM_CACHE_DIR
    cache_dir: Path = Path(".slrsm-cache")

    # Logging
    log_dir: Path = Path("logs")
    log_level: str = "INFO"

    # Process pool size for node integrations, 1 runs in-process
    workers: int = Field(default=1, ge=1)

    @property
    def is_dev(self) -> bool:
        return self.env == "dev"


load_dotenv()
settings = Config()
