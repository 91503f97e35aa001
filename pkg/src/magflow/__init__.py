"""
Contains application-wide runtime-initialized names and directory paths.
"""
from __future__ import annotations

import importlib.metadata
import os
from pathlib import Path

from magflow.path_helpers import get_appdir

APP_NAME: str = "magflow"

try:
    __version__ = importlib.metadata.version(APP_NAME)
except importlib.metadata.PackageNotFoundError:
    # Running from a source checkout without an install (e.g. pytest with pythonpath=src).
    __version__ = "0.0.0+src"

# Directories
DIR_APP: Path = get_appdir(dirname=APP_NAME, override=os.getenv("MAGFLOW_HOME"))
"""Application directory"""

FILE_LOG: Path = DIR_APP / f"log-{APP_NAME}.log"
"""Log file location"""

ENV_THREADS: str = "MAGFLOW_THREADS"
"""Environment variable capping the number of worker threads used for sweeps."""
