from pydantic import BaseModel, ConfigDict

SCHEMA_VERSION = 1


class FrozenModel(BaseModel):
    # Shared between worker processes and hashed for the cache
    model_config = ConfigDict(frozen=True, extra="forbid")
