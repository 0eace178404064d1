"""Centralised configuration helpers.

Environment lookups live here (prefix ``COUNTING_``, optional ``.env`` file)
so the rest of the code imports settings instead of calling os.getenv.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="COUNTING_", extra="ignore")

    alpha: float = 0.98
    epsilon: float = 1e-3
    max_iter: Optional[int] = None
    tie_tol: Optional[float] = None
    enum_cap: int = 24
    dense_threshold: int = 64
    power_tol: float = 1e-10
    power_max_iter: int = 10000
    categoriser_max_iter: int = 100000
    events_verbose: bool = False

    @field_validator("alpha")
    @classmethod
    def _alpha_open_unit(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("alpha must lie strictly between 0 and 1")
        return v

    @field_validator("epsilon", "power_tol")
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0.0 or math.isnan(v):
            raise ValueError("tolerance must be positive")
        return v

    @field_validator("enum_cap", "dense_threshold", "power_max_iter", "categoriser_max_iter")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must be non-negative")
        return v

    def resolved_tie_tol(self, epsilon: Optional[float] = None) -> float:
        if self.tie_tol is not None:
            return float(self.tie_tol)
        return 10.0 * float(epsilon if epsilon is not None else self.epsilon)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv(override=False)
    return Settings()


__all__ = ["Settings", "get_settings"]
