"""Runtime settings for dedekind-engine."""

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from dedekind_engine.errors import PreconditionError


class Settings(BaseModel):
    """Defaults for search bounds and worker threads.

    Read from DEDEKIND_* environment variables (a local .env file is loaded
    first). CLI flags override these values.
    """

    threads: int = Field(default=1, ge=1)
    search_bound: int = Field(default=50, ge=1)
    prime_cap: int = Field(default=50, ge=2)


_ENV_KEYS = {
    "threads": "DEDEKIND_THREADS",
    "search_bound": "DEDEKIND_SEARCH_BOUND",
    "prime_cap": "DEDEKIND_PRIME_CAP",
}


def load_settings() -> Settings:
    """Build settings from the environment; malformed values raise PreconditionError."""
    load_dotenv()
    values = {name: os.getenv(key) for name, key in _ENV_KEYS.items()}
    try:
        return Settings(**{name: value for name, value in values.items() if value})
    except ValidationError as e:
        raise PreconditionError(f"invalid DEDEKIND_* setting: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
