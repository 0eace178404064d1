from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest


# Ensure project root is on sys.path for `import evaluator`
ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.config import get_settings  # noqa: E402
from core.framework import ArgumentationFramework  # noqa: E402
from evaluator.config import get_survey_settings  # noqa: E402


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    for name in list(os.environ):
        if name.startswith(("COUNTING_", "SURVEY_")):
            monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    get_survey_settings.cache_clear()
    yield
    get_settings.cache_clear()
    get_survey_settings.cache_clear()


@pytest.fixture
def sample() -> ArgumentationFramework:
    return ArgumentationFramework.from_names(
        ["x1", "x2", "x3", "x4"],
        [("x2", "x1"), ("x3", "x2"), ("x2", "x3"), ("x3", "x3"), ("x4", "x2")],
    )


@pytest.fixture
def cardinality_case() -> ArgumentationFramework:
    """x has one unattacked attacker; y has two attackers, each under two unattacked ones."""
    return ArgumentationFramework.from_names(
        ["x", "a", "y", "b1", "b2", "c1", "c2", "c3", "c4"],
        [
            ("a", "x"), ("b1", "y"), ("b2", "y"),
            ("c1", "b1"), ("c2", "b1"), ("c3", "b2"), ("c4", "b2"),
        ],
    )


@pytest.fixture
def quality_case() -> ArgumentationFramework:
    """x has two weakened attackers; y has one unattacked attacker."""
    return ArgumentationFramework.from_names(
        ["x", "a1", "a2", "b1", "b2", "y", "yp"],
        [("b1", "a1"), ("b2", "a2"), ("a1", "x"), ("a2", "x"), ("yp", "y")],
    )
