"""User-defined level-set surfaces with explicit derivatives."""
from __future__ import annotations

from typing import Callable

import numpy as np
from numpy import ndarray

from magflow.surfaces.base import LevelSetSurface


def quartic_surface(level: float = 1.0) -> LevelSetSurface:
    """
    f(z) = |z_1|^2 + |z_2|^4 in C^2. Its Hessian does not commute with i, so <v, i grad f>
    is not conserved; it is the reference non-ellipsoid surface.
    """

    def f(x: ndarray) -> float:
        rho = abs(x[1]) ** 2
        return float(abs(x[0]) ** 2 + rho**2)

    def grad(x: ndarray) -> ndarray:
        rho = abs(x[1]) ** 2
        return np.array([2.0 * x[0], 4.0 * rho * x[1]], dtype=np.complex128)

    def hess_apply(x: ndarray, v: ndarray) -> ndarray:
        rho = abs(x[1]) ** 2
        drho = 2.0 * (np.conj(x[1]) * v[1]).real
        return np.array([2.0 * v[0], 4.0 * rho * v[1] + 4.0 * drho * x[1]], dtype=np.complex128)

    return LevelSetSurface(f=f, grad=grad, hess_apply=hess_apply, level=level, dim_n=2, name="quartic")


CUSTOM_SURFACES: dict[str, Callable[..., LevelSetSurface]] = {
    "quartic": quartic_surface,
}
"""Named custom surfaces selectable from a run configuration."""
