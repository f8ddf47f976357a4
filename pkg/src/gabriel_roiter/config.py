"""Runtime settings read from the environment.

An optional ``.env`` file in the working directory is loaded first, then the
``GR_*`` variables override the defaults below.
"""

import os
from functools import lru_cache
from pathlib import Path

import dotenv
from pydantic import BaseModel, Field

# ===== CONFIGURATION =====

ENV_PREFIX = "GR_"


class Settings(BaseModel):
    """Caps and budgets for the exhaustive computations."""

    iteration_cap: int = Field(
        default=8, ge=0, description="Largest n accepted by iterate_measure."
    )
    max_len_cap: int = Field(
        default=7, ge=1, description="Largest total dimension for enumerate_ind."
    )
    max_prime: int = Field(
        default=7, ge=2, description="Largest field characteristic accepted."
    )
    hom_dim_cap: int = Field(
        default=20, ge=1, description="Largest Hom dimension scanned exhaustively."
    )
    orbit_budget: int = Field(
        default=2**20,
        ge=1,
        description="Largest number of matrix tuples per dimension vector.",
    )
    end_scan_budget: int = Field(
        default=2**16,
        ge=1,
        description="Largest number of endomorphisms scanned for a splitting.",
    )
    log_level: str = Field(default="WARNING", description="Root log level.")


def load_env(env_path: Path | None = None) -> None:
    """Load a ``.env`` file if one exists; never overrides exported variables."""
    path = env_path or Path.cwd() / ".env"
    if path.exists():
        dotenv.load_dotenv(path, override=False)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings."""
    load_env()
    values = {}
    for name in Settings.model_fields:
        raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None:
            values[name] = raw
    return Settings.model_validate(values)
