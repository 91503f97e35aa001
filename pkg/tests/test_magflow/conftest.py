"""Shared helpers and fixtures for the magflow tests: reference states, random tangent states."""
from __future__ import annotations

import numpy as np
import pytest
from numpy import ndarray

from magflow.surfaces.base import LevelSetSurface, PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec, ellipsoid_surface
from magflow.surfaces.magnetic import tangent_project

SPEC_124 = EllipsoidSpec((1.0, 2.0, 4.0))
SPEC_14 = EllipsoidSpec((1.0, 4.0))
UNIT_SPHERE_2 = EllipsoidSpec.sphere(2)
UNIT_SPHERE_3 = EllipsoidSpec.sphere(3)


def basis(n: int, k: int) -> ndarray:
    """e_k in C^n (1-based)."""
    e = np.zeros(n, dtype=np.complex128)
    e[k - 1] = 1.0
    return e


def random_complex(rng: np.random.Generator, n: int) -> ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def random_ellipsoid_state(spec: EllipsoidSpec, rng: np.random.Generator, speed: float = 1.0) -> PhaseState:
    """Random point of E(A) with a random tangent velocity of the given speed."""
    q = random_complex(rng, spec.n)
    q = q / np.sqrt(spec.f_value(q))
    v = tangent_project(ellipsoid_surface(spec), q, random_complex(rng, spec.n))
    return PhaseState(q, speed * v / np.linalg.norm(v))


def random_tangent(s: LevelSetSurface, x: ndarray, rng: np.random.Generator) -> ndarray:
    return tangent_project(s, x, random_complex(rng, s.dim_n))


def reeb_state(n: int = 2, r: float = 1.0) -> PhaseState:
    """(r e_1, 1/2 i r e_1): the flow line of X on the sphere of radius r."""
    q = r * basis(n, 1)
    return PhaseState(q, 0.5j * q)


def horizontal_state(n: int = 2) -> PhaseState:
    """(e_1, e_2) on the unit sphere: alpha(v) = 0, C = 0."""
    return PhaseState(basis(n, 1), basis(n, 2))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
