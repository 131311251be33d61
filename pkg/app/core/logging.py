"""Logging setup for the CLI and the ASGI app.

Records go to stderr only; stdout carries command results (golden files).
"""
from __future__ import annotations

import logging
import sys
from typing import Optional

from app.core.config import settings

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    root = logging.getLogger("app")
    if getattr(configure_logging, "_done", False):  # type: ignore[attr-defined]
        root.setLevel((level or settings.LOG_LEVEL).upper())
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.setLevel((level or settings.LOG_LEVEL).upper())
    root.propagate = False
    configure_logging._done = True  # type: ignore[attr-defined]


__all__ = ["configure_logging"]
