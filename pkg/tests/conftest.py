import os
import sys
from pathlib import Path

import pytest


# Add project root (folder containing core/, main.py) to sys.path for imports in tests
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.config import get_settings  # noqa: E402
from core.framework import ArgumentationFramework  # noqa: E402

DATA = ROOT / "data"


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    # settings are cached; tests that set COUNTING_* must see a reload
    for name in list(os.environ):
        if name.startswith("COUNTING_"):
            monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def sample() -> ArgumentationFramework:
    return ArgumentationFramework.from_names(
        ["x1", "x2", "x3", "x4"],
        [("x2", "x1"), ("x3", "x2"), ("x2", "x3"), ("x3", "x3"), ("x4", "x2")],
    )


@pytest.fixture
def twin_trees() -> ArgumentationFramework:
    return ArgumentationFramework.from_names(
        ["x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4", "y5"],
        [
            ("x2", "x1"), ("x3", "x1"), ("x4", "x2"), ("x5", "x3"),
            ("y2", "y1"), ("y3", "y1"), ("y4", "y2"), ("y5", "y2"),
        ],
    )


@pytest.fixture
def two_cycle() -> ArgumentationFramework:
    return ArgumentationFramework.from_names(["a", "b"], [("a", "b"), ("b", "a")])


@pytest.fixture
def attack_free() -> ArgumentationFramework:
    return ArgumentationFramework.from_names(["a", "b", "c"])
