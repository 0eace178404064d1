from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Tuple


def _get_float(name: str, default: float) -> float:
    try:
        return float(os.getenv(name, str(default)))
    except Exception:
        return default


def _get_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, str(default)))
    except Exception:
        return default


def _get_floats(name: str, default: Tuple[float, ...]) -> Tuple[float, ...]:
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        return tuple(float(p) for p in raw.split(",") if p.strip())
    except Exception:
        return default


@dataclass(frozen=True)
class SurveySettings:
    TRIALS: int = 1000
    SEED: int = 7
    N_MIN: int = 2
    N_MAX: int = 8
    PROBABILITIES: Tuple[float, ...] = (0.1, 0.25, 0.5)
    ALPHA: float = 0.98
    TIE_TOL: float = 1e-9
    STORE_LIMIT: int = 5
    REPORTS_DIR: Path = Path(__file__).parent / "reports"

    def generator_config(self) -> dict:
        return {
            "n_min": int(self.N_MIN),
            "n_max": int(self.N_MAX),
            "probabilities": list(self.PROBABILITIES),
        }


@lru_cache(maxsize=1)
def get_survey_settings() -> SurveySettings:
    reports = os.getenv("SURVEY_REPORTS_DIR")
    return SurveySettings(
        TRIALS=_get_int("SURVEY_TRIALS", 1000),
        SEED=_get_int("SURVEY_SEED", 7),
        N_MIN=_get_int("SURVEY_N_MIN", 2),
        N_MAX=_get_int("SURVEY_N_MAX", 8),
        PROBABILITIES=_get_floats("SURVEY_PROBABILITIES", (0.1, 0.25, 0.5)),
        ALPHA=_get_float("SURVEY_ALPHA", 0.98),
        TIE_TOL=_get_float("SURVEY_TIE_TOL", 1e-9),
        STORE_LIMIT=_get_int("SURVEY_STORE_LIMIT", 5),
        REPORTS_DIR=Path(reports) if reports else Path(__file__).parent / "reports",
    )
