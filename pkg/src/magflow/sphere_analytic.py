"""
Closed-form magnetic geodesics of the round sphere of radius r in C^n.

On the sphere the equation of motion is linear with constant coefficients,

    z'' = i z' + lambda z,   lambda = C - kappa^2 / r^2,

since C and kappa are conserved. Each coordinate is therefore a combination of e^{mu t} over the
roots of mu^2 - i mu - lambda = 0, or (c_1 + c_2 t) e^{mu t} at the double root lambda = 1/4.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from numpy import ndarray

from magflow.errors import PreconditionError
from magflow.logger import log
from magflow.surfaces.base import PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec, ellipsoid_c, ellipsoid_surface
from magflow.surfaces.magnetic import ensure_phase_state

EPS_DEG: float = 1e-8
"""|4 lambda - 1| below this selects the double-root branch."""


@dataclass(frozen=True)
class SphereLinearCoefficients:
    """Characteristic data of z'' = i z' + lambda z."""

    lam: float
    mu_plus: complex
    mu_minus: complex
    degenerate: bool

    UNIT_SPEED_TOL: ClassVar[float] = 1e-8

    @classmethod
    def from_lambda(cls, lam: float, eps_deg: float = EPS_DEG) -> SphereLinearCoefficients:
        """
        :param lam: the coefficient lambda.
        :param eps_deg: threshold on |4 lambda - 1| for the double-root branch (0 disables it).
        """
        disc = 4.0 * lam - 1.0
        if abs(disc) < eps_deg:
            return cls(lam=lam, mu_plus=0.5j, mu_minus=0.5j, degenerate=True)
        root = complex(np.sqrt(disc + 0j))
        return cls(lam=lam, mu_plus=(1j + root) / 2.0, mu_minus=(1j - root) / 2.0, degenerate=False)

    @classmethod
    def for_state(cls, r: float, st: PhaseState) -> SphereLinearCoefficients:
        """lambda = C - kappa^2 / r^2 from the state."""
        spec = EllipsoidSpec.sphere(st.dim, r)
        return cls.from_lambda(ellipsoid_c(spec, st) - st.speed**2 / r**2)

    def characteristic_residual(self) -> float:
        """max |mu^2 - i mu - lambda| over both roots."""
        return max(abs(mu * mu - 1j * mu - self.lam) for mu in (self.mu_plus, self.mu_minus))

    def evolve(self, q: ndarray, v: ndarray, t: float) -> tuple[ndarray, ndarray]:
        """Position and velocity at time t of the solution with z(0) = q, z'(0) = v."""
        q, v = np.asarray(q, dtype=np.complex128), np.asarray(v, dtype=np.complex128)
        if self.degenerate:
            mu = self.mu_plus
            slope = v - mu * q
            e = np.exp(mu * t)
            z = (q + slope * t) * e
            w = (slope + mu * (q + slope * t)) * e
            return z, w
        mp, mm = self.mu_plus, self.mu_minus
        c_plus = (v - mm * q) / (mp - mm)
        c_minus = q - c_plus
        ep, em = np.exp(mp * t), np.exp(mm * t)
        return c_plus * ep + c_minus * em, mp * c_plus * ep + mm * c_minus * em


def solve_sphere(r: float, st0: PhaseState, t: float) -> PhaseState:
    """
    Exact state at time t of the magnetic geodesic with initial state st0 on the sphere of radius r.

    :raises PreconditionError: if r <= 0 or st0 is off the sphere or not tangent.
    """
    if not r > 0:
        raise PreconditionError(f"Sphere radius must be > 0, got {r!r}.")
    ensure_phase_state(ellipsoid_surface(EllipsoidSpec.sphere(st0.dim, r)), st0)
    coeffs = SphereLinearCoefficients.for_state(r, st0)
    log.debug(f"Sphere oracle: lambda={coeffs.lam!r}, degenerate={coeffs.degenerate}.")
    z, w = coeffs.evolve(st0.q, st0.v, t)
    return PhaseState(z, w)


def solve_sphere_samples(r: float, st0: PhaseState, times: ndarray) -> list[PhaseState]:
    """solve_sphere at each of the given times, sharing the characteristic data."""
    if not r > 0:
        raise PreconditionError(f"Sphere radius must be > 0, got {r!r}.")
    ensure_phase_state(ellipsoid_surface(EllipsoidSpec.sphere(st0.dim, r)), st0)
    coeffs = SphereLinearCoefficients.for_state(r, st0)
    return [PhaseState(*coeffs.evolve(st0.q, st0.v, float(t))) for t in times]


def psi_angle(r: float, st: PhaseState) -> float:
    """
    Contact angle psi in [0, pi] of a unit-speed state, cos(psi) = r C.

    :raises PreconditionError: if the state does not have unit speed.
    """
    if abs(st.speed - 1.0) > SphereLinearCoefficients.UNIT_SPEED_TOL:
        raise PreconditionError(f"psi is defined for unit-speed states, got |v| = {st.speed!r}.")
    c = ellipsoid_c(EllipsoidSpec.sphere(st.dim, r), st)
    return float(np.arccos(np.clip(r * c, -1.0, 1.0)))
