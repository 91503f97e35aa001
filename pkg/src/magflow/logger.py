"""Contains logging related functionality."""
from __future__ import annotations

import logging
import sys
import warnings
from logging.handlers import RotatingFileHandler

from rich.console import Console
from rich.logging import RichHandler

from magflow import FILE_LOG


LOG_LEVEL: str | int = logging.DEBUG if "-debug" in sys.argv[1:] or "--debug" in sys.argv[1:] else logging.INFO

LOG_WRITEMODE: str = "a"
"""'w' for overwriting the log each session, 'a' for appending."""

LOG_MAX_SIZE_BYTES: int = 10_000_000
"""Maximum size on disk for log files before they are rotated."""

LOG_SHOW_PROCESS_ID: bool = False


def _initialize_logger(log_name: str = "magflow") -> logging.Logger:
    """
    Initializes logger (by default the package-level logger).

    :param log_name: (optional str) name for logger instance (defaults to the package name).

    :returns: logging.Logger object
    """
    logger = logging.getLogger(log_name)
    logger.setLevel(LOG_LEVEL)
    logger.propagate = False
    if logger.handlers:
        return logger

    # Handler for terminal/console; stderr so CSV written to stdout stays clean.
    console_handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        log_time_format="%Y-%m-%dT%H:%M:%S%z",
        markup=True,
        show_path=False,
    )
    console_format = logging.Formatter(
        f"{'[PID=%(process)d]' if LOG_SHOW_PROCESS_ID else ''}%(module)s.%(funcName)s: %(message)s"
    )
    console_handler.setFormatter(console_format)
    logger.addHandler(console_handler)

    # Handler for file-based log
    file_format = (
        f"%(asctime)s | %(levelname)s | {'[PID=%(process)d]' if LOG_SHOW_PROCESS_ID else ''}"
        "%(module)s.%(funcName)s: %(message)s"
    )
    try:
        FILE_LOG.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            FILE_LOG,
            mode=LOG_WRITEMODE,
            maxBytes=LOG_MAX_SIZE_BYTES,
            backupCount=2,
            encoding="utf-8",
        )
    except OSError as err:
        warnings.warn(f"File logging disabled; couldn't open {str(FILE_LOG)!r}: {err}", UserWarning)
    else:
        file_handler.setFormatter(logging.Formatter(file_format, datefmt="%Y-%m-%dT%H:%M:%S%z"))
        logger.addHandler(file_handler)

    return logger


log = _initialize_logger()
