"""
Lagrangian and free-time actions of closed orbits on E(A), the Mane critical value a_n / 8 and the
family of circle orbits sqrt(a_j) e^{i omega t} e_j that witnesses the failure of the contact-type property.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, NamedTuple

import numpy as np
import scipy.integrate
from numpy import ndarray

from magflow.errors import PreconditionError
from magflow.integrator.base import Trajectory, diagnostics_frame
from magflow.integrator.systems import ellipsoid_system
from magflow.surfaces.base import PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec

MIN_ORBIT_SAMPLES: int = 16
DEFAULT_ORBIT_SAMPLES: int = 2049
SIGN_ZERO_TOL: float = 1e-8
"""|S_free| at or below this counts as zero action."""


@dataclass(frozen=True)
class ActionReport:
    """Actions of a closed orbit of period T at energy kappa."""

    kappa: float
    period: float
    S_L: float
    S_free: float
    samples: int

    REL_TOL: ClassVar[float] = 1e-14

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError(f"Period must be > 0, got {self.period!r}.")
        expected = self.S_L + self.kappa * self.period
        if abs(self.S_free - expected) > self.REL_TOL * max(1.0, abs(expected)):
            raise ValueError(f"S_free ({self.S_free!r}) differs from S_L + kappa T ({expected!r}).")


def _quadrature(values: ndarray, times: ndarray) -> float:
    if len(values) % 2 == 1:
        return float(scipy.integrate.simpson(values, x=times))
    head = float(scipy.integrate.simpson(values[:-1], x=times[:-1]))
    return head + float(scipy.integrate.trapezoid(values[-2:], x=times[-2:]))


def lagrangian_action(traj: Trajectory) -> float:
    """
    S_L = integral of L(q, v) = 1/2 |v|^2 - alpha_q(v) over the time span: composite Simpson rule,
    with a trapezoid on the final interval when the sample count is even.

    :raises PreconditionError: for fewer than 3 samples.
    """
    if len(traj) < 3:
        raise PreconditionError(f"Action quadrature needs at least 3 samples, got {len(traj)}.")
    vs, qs = traj.vs, traj.qs
    density = 0.5 * np.sum(vs.real**2 + vs.imag**2, axis=1) - 0.5 * np.einsum("ij,ij->i", np.conj(qs), vs).imag
    return _quadrature(density, traj.times)


def free_time_action(traj: Trajectory, kappa: float) -> float:
    """S_{L+kappa} = S_L + kappa T, T the time span of the trajectory."""
    return lagrangian_action(traj) + kappa * traj.span


def action_report(traj: Trajectory, kappa: float) -> ActionReport:
    s_l = lagrangian_action(traj)
    span = traj.span
    return ActionReport(kappa=kappa, period=span, S_L=s_l, S_free=s_l + kappa * span, samples=len(traj))


def mane_value(spec: EllipsoidSpec) -> float:
    """Mane critical value 1/2 ||alpha||_inf^2 = a_n / 8 of E(A)."""
    return spec.a[-1] / 8.0


def _axis_index(spec: EllipsoidSpec, j: int) -> int:
    if not 1 <= j <= spec.n:
        raise IndexError(f"Axis must be in [1, {spec.n}], got {j!r}.")
    return j - 1


def circle_orbit(spec: EllipsoidSpec, j: int, omega: float, samples: int = DEFAULT_ORBIT_SAMPLES) -> Trajectory:
    """
    One period T = 2 pi / |omega| of gamma(t) = sqrt(a_j) e^{i omega t} e_j, sampled analytically,
    with the ellipsoid diagnostics attached. Its energy is 1/2 omega^2 a_j.

    :raises IndexError: if j is not in [1, n].
    :raises PreconditionError: if omega = 0 or samples < 16.
    """
    k = _axis_index(spec, j)
    if omega == 0 or not np.isfinite(omega):
        raise PreconditionError(f"omega must be finite and non-zero, got {omega!r}.")
    if samples < MIN_ORBIT_SAMPLES:
        raise PreconditionError(f"Need at least {MIN_ORBIT_SAMPLES} samples, got {samples!r}.")
    period = 2.0 * np.pi / abs(omega)
    times = np.arange(samples, dtype=np.float64) * (period / (samples - 1))
    amplitude = np.sqrt(spec.a[k])
    states = []
    for t in times:
        q = np.zeros(spec.n, dtype=np.complex128)
        q[k] = amplitude * np.exp(1j * omega * t)
        states.append(PhaseState(q, 1j * omega * q))
    sys = ellipsoid_system(spec)
    rows = [sys.diagnose(st) for st in states]
    return Trajectory(times, tuple(states), diagnostics_frame(rows, sys.diagnostic_names))


def circle_orbit_energy(spec: EllipsoidSpec, j: int, omega: float) -> float:
    return 0.5 * omega**2 * spec.a[_axis_index(spec, j)]


def circle_orbit_action_closed_form(spec: EllipsoidSpec, j: int, omega: float) -> float:
    """
    S_free of the axis-j circle orbit: 2 pi a_j (omega^2 - omega / 2) / |omega|,
    which is pi a_j (2 omega - 1) for omega > 0.
    """
    a_j = spec.a[_axis_index(spec, j)]
    return 2.0 * np.pi * a_j * (omega**2 - 0.5 * omega) / abs(omega)


def action_sign(value: float, tol: float = SIGN_ZERO_TOL) -> int:
    return 0 if abs(value) <= tol else int(np.sign(value))


class ContactTypeReport(NamedTuple):
    """Free-time action of the axis-n circle orbit at energy kappa."""

    omega: float
    kappa: float
    S_free: float
    sign: int
    claim: bool
    """True if kappa <= a_n / 8, where a non-positive action witnesses the failure of contact type."""


def contact_type_report(
    spec: EllipsoidSpec, kappa: float, samples: int = DEFAULT_ORBIT_SAMPLES
) -> ContactTypeReport:
    """
    Builds the axis-n circle orbit at energy kappa (omega = sqrt(2 kappa / a_n)) and evaluates its
    free-time action by quadrature.

    :raises PreconditionError: if kappa <= 0.
    """
    if not kappa > 0:
        raise PreconditionError(f"kappa must be > 0, got {kappa!r}.")
    omega = float(np.sqrt(2.0 * kappa / spec.a[-1]))
    s_free = free_time_action(circle_orbit(spec, spec.n, omega, samples), kappa)
    return ContactTypeReport(
        omega=omega, kappa=kappa, S_free=s_free, sign=action_sign(s_free), claim=kappa <= mane_value(spec)
    )
