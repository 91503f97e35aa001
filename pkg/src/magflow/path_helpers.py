"""Contains helper functions for directory/path management/creation."""

from __future__ import annotations

import os
import platform
import tempfile
import warnings
from pathlib import Path
from typing import Optional


def get_appdir(dirname: str, make_if_non_exsiting: bool = True, override: Optional[str] = None) -> Path:
    """
    Returns application directory in a cross-platform way.

    :param dirname: (str) directory name (e.g. Python package name).
    :param make_if_non_exsiting: (optional bool) creates the directory and any parent directories which
        don't exist yet, given the proper permissions are available. (Defaults to True)
    :param override: (optional str) explicit directory to use instead of the platform default
        (e.g. taken from an environment variable).
    :returns: pathlib.Path object

    .. note ::
        If the directory cannot be created (no write permission, read-only home), a directory
        inside the system's temporary directory is used instead and a UserWarning is emitted.
    """
    if override:
        dir_ = Path(override)
    else:
        match platform.system():
            case "Linux":
                dir_ = Path.home() / f".{dirname}"  # e.g. /home/$USER/.magflow
            case "Windows":
                if (appdata_dir := os.getenv("LOCALAPPDATA")) is None:
                    raise EnvironmentError("LOCALAPPDATA environment variable does not seem to be set.")
                dir_ = Path(str(appdata_dir), dirname)  # e.g. C:/Users/$USER/AppData/Local/magflow
            case "Darwin":
                dir_ = Path.home() / "Library" / "Preferences" / dirname  # e.g.  ~/Library/Preferences/magflow
            case _:
                raise NotImplementedError(f"Unrecognized/unsupported platform/OS: {platform.system()!r}.")

    if make_if_non_exsiting and not dir_.exists():
        try:
            dir_.mkdir(parents=True)
        except (PermissionError, OSError):
            fallback = Path(tempfile.gettempdir()) / dirname
            warnings.warn(
                f"Couldn't create application data directory {str(dir_)!r}; using {str(fallback)!r} instead.",
                UserWarning,
            )
            fallback.mkdir(parents=True, exist_ok=True)
            dir_ = fallback

    return dir_.resolve()
