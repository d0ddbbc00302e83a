#!/usr/bin/env python
"""
app/config.py
────────────────────────────────────────────────────────────────────────
Environment-driven settings shared by the CLI, the HTTP app and the harness.
``start.sh`` / ``dev.sh`` export a local ``.env`` before launching.
"""
from __future__ import annotations

import logging
import os

LOG_LEVEL = os.getenv("QSYMM_LOG_LEVEL", "INFO").upper()

DEFAULT_RING = os.getenv("DEFAULT_RING", "Z")
DEFAULT_TRUNC = int(os.getenv("DEFAULT_TRUNC", "8"))

DITTERS_MAX_DEGREE = int(os.getenv("DITTERS_MAX_DEGREE", "8"))
DITTERS_SNF_MAX_DEGREE = int(os.getenv("DITTERS_SNF_MAX_DEGREE", "6"))
HARNESS_WORKERS = int(os.getenv("HARNESS_WORKERS", "1"))

REPORT_SCHEMA_VERSION = os.getenv("REPORT_SCHEMA_VERSION", "1.0")

API_MAX_TRUNC = int(os.getenv("API_MAX_TRUNC", "8"))


def configure_logging() -> None:
    """Entry points only; library modules just ask for their named logger."""
    logging.basicConfig(
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        level=getattr(logging, LOG_LEVEL, logging.INFO),
    )
