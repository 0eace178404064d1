"""Structured pipeline events.

Every stage reports through `log_event(stage, message, level, meta)`; the
payload goes to the standard logging tree under ``counting.<stage>`` with the
metadata rendered as compact JSON so log lines stay grep-able.
"""

from __future__ import annotations

import json
import logging
from typing import Any, Optional


def log_event(stage: str, message: str, level: str = "info", meta: Optional[dict[str, Any]] = None) -> None:
    try:
        logger = logging.getLogger(f"counting.{stage}")
        lvl = logging.getLevelName(level.upper())
        if not isinstance(lvl, int):
            lvl = logging.INFO
        if not logger.isEnabledFor(lvl):
            return
        payload = json.dumps(meta or {}, sort_keys=True, default=str, separators=(",", ":"))
        logger.log(lvl, "%s %s", message, payload)
    except Exception:
        # Never raise from logging
        pass


def configure(verbosity: int = 0) -> None:
    """Console logging for the CLI; diagnostics go to standard error."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


__all__ = ["log_event", "configure"]
