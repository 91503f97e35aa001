from __future__ import annotations

import sys
import warnings

import numpy as np

from magflow.logger import log


def version_check(min_py_version: tuple[int, ...] = (3, 10, 0)) -> None:
    """
    Check Python version compatibility. This should be done by a package installer (e.g. pip)
    automatically, but it may be nice to check this in case the script is run as standalone.
    """
    if not (cur_pyversion := sys.version_info) >= min_py_version:
        warnings.warn(
            f"You are running Python version {'.'.join(str(x) for x in cur_pyversion[:3])}. "
            f"Although this may work, use version {'.'.join(str(x) for x in min_py_version)} or higher "
            "for optimal compatibility.",
            category=UserWarning,
        )
    log.debug(f"Python version OK: {cur_pyversion!r}")


def float_precision_check() -> None:
    """
    Checks that numpy's float64 is an IEEE-754 double. The tolerances used throughout
    (1e-12 .. 1e-15) are meaningless otherwise.

    :raises RuntimeError: if float64 machine epsilon differs from 2**-52.
    """
    if (eps := float(np.finfo(np.float64).eps)) != 2.0**-52:
        raise RuntimeError(f"Unexpected float64 machine epsilon {eps!r}; IEEE-754 double precision required.")
    log.debug(f"float64 precision OK (eps={eps!r}).")
