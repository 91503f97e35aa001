"""
Complex ellipsoids E(A) = {z in C^n | <A^{-1} z, z> = 1}, A = diag(a_1, ..., a_n), 0 < a_1 <= ... <= a_n.

The round sphere of radius r is the special case a_1 = ... = a_n = r^2 (f(z) = |z|^2 / r^2 at level 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from numpy import ndarray

from magflow.errors import RegularityError
from magflow.geometry.complex_geometry import VectorLike, as_complex
from magflow.geometry.checks import ensure_same_length
from magflow.surfaces.base import EPS_REG, LevelSetSurface, PhaseState


@dataclass(frozen=True)
class EllipsoidSpec:
    """The semi-axis data a = (a_1, ..., a_n) of E(A)."""

    a: tuple[float, ...]

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        if not a:
            raise ValueError("a must contain at least one entry.")
        if not all(np.isfinite(a)) or any(x <= 0 for x in a) or any(x > y for x, y in zip(a, a[1:])):
            raise ValueError(f"a must be positive nondecreasing, got {list(a)!r}.")
        object.__setattr__(self, "a", a)

    @classmethod
    def sphere(cls, n: int, radius: float = 1.0) -> EllipsoidSpec:
        """Sphere of the given radius in C^n, encoded as a_j = radius^2."""
        if not radius > 0:
            raise ValueError(f"Sphere radius must be > 0, got {radius!r}.")
        return cls((radius**2,) * n)

    @property
    def n(self) -> int:
        return len(self.a)

    @cached_property
    def a_array(self) -> ndarray:
        arr = np.asarray(self.a, dtype=np.float64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def multiplicities(self) -> tuple[tuple[float, int], ...]:
        """Distinct values lambda_1 < ... < lambda_k with their counts l_1, ..., l_k."""
        values, counts = np.unique(self.a_array, return_counts=True)
        return tuple((float(lam), int(cnt)) for lam, cnt in zip(values, counts))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(cnt for _, cnt in self.multiplicities)

    @property
    def blocks(self) -> tuple[range, ...]:
        """0-based index ranges of the multiplicity blocks."""
        ranges, start = [], 0
        for size in self.block_sizes:
            ranges.append(range(start, start + size))
            start += size
        return tuple(ranges)

    @property
    def is_sphere(self) -> bool:
        return len(self.multiplicities) == 1

    @property
    def radius(self) -> float:
        """Sphere radius sqrt(a_1); only meaningful if is_sphere."""
        return float(np.sqrt(self.a[0]))

    def f_value(self, z: VectorLike) -> float:
        """f(z) = sum_j |z_j|^2 / a_j."""
        return float(np.sum(np.abs(as_complex(z)) ** 2 / self.a_array))


def ellipsoid_surface(spec: EllipsoidSpec) -> LevelSetSurface:
    """E(A) as the level set f = 1 with grad f(z) = 2 A^{-1} z and Hess f = 2 A^{-1}."""
    inv_a = 1.0 / spec.a_array

    def f(x: ndarray) -> float:
        return float(np.sum(inv_a * (x.real**2 + x.imag**2)))

    def grad(x: ndarray) -> ndarray:
        return 2.0 * inv_a * x

    def hess_apply(x: ndarray, v: ndarray) -> ndarray:
        return 2.0 * inv_a * v

    name = f"sphere(r={spec.radius:g})" if spec.is_sphere else f"E(diag{spec.a})"
    return LevelSetSurface(
        f=f, grad=grad, hess_apply=hess_apply, level=1.0, dim_n=spec.n, name=name, hessian_commutes_with_i=True
    )


def ellipsoid_c(spec: EllipsoidSpec, st: PhaseState) -> float:
    """C = sum_j <v_j, i q_j>_R / a_j, i.e. 1/2 <v, i grad f(q)> for f = <A^{-1} z, z>."""
    return float(np.sum((np.conj(st.v) * 1j * st.q).real / spec.a_array))


def ellipsoid_rhs(spec: EllipsoidSpec, st: PhaseState) -> ndarray:
    """
    Ellipsoid form of the magnetic geodesic equation, with C taken from the current state:

        q'' = i v + (C - sum_j |v_j|^2 / a_j) / (sum_j |q_j|^2 / a_j^2) * (q_1/a_1, ..., q_n/a_n)

    :raises RegularityError: if sum_j |q_j|^2 / a_j^2 <= eps_reg (impossible on E(A); signals bad input).
    """
    ensure_same_length(st.q, spec.a_array, what="state and ellipsoid")
    return ellipsoid_acceleration(1.0 / spec.a_array, st.q, st.v)


def ellipsoid_acceleration(inv_a: ndarray, q: ndarray, v: ndarray) -> ndarray:
    """ellipsoid_rhs on raw arrays, given the reciprocals 1/a_j."""
    denom = float(np.dot(q.real**2 + q.imag**2, inv_a**2))
    if not denom > EPS_REG:
        raise RegularityError(f"Denominator sum |q_j|^2/a_j^2 = {denom:.3e} vanishes; state is off E(A).")
    c = float(np.dot((np.conj(v) * 1j * q).real, inv_a))
    kin = float(np.dot(v.real**2 + v.imag**2, inv_a))
    return 1j * v + ((c - kin) / denom) * (inv_a * q)


class CBound(NamedTuple):
    holds: bool
    margin: float
    """kappa * sqrt(sum |q_j|^2 / a_j^2) - |C|; zero in the Cauchy-Schwarz equality case."""


def c_bound_holds(spec: EllipsoidSpec, st: PhaseState, slack: float = 1e-12) -> CBound:
    """|C| <= kappa * sqrt(sum_j |q_j|^2 / a_j^2), with kappa = |v|."""
    bound = st.speed * float(np.sqrt(np.sum(np.abs(st.q) ** 2 / spec.a_array**2)))
    margin = bound - abs(ellipsoid_c(spec, st))
    return CBound(holds=margin >= -slack, margin=margin)


def sphere_to_ellipsoid(spec: EllipsoidSpec, z: VectorLike) -> ndarray:
    """The exact magnetomorphism F_A(z) = sqrt(A) z from the unit sphere onto E(A)."""
    return np.sqrt(spec.a_array) * as_complex(z)


def ellipsoid_to_sphere(spec: EllipsoidSpec, z: VectorLike) -> ndarray:
    """Inverse of sphere_to_ellipsoid."""
    return as_complex(z) / np.sqrt(spec.a_array)
