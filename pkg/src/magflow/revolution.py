"""
Magnetic flow on a surface of revolution in intrinsic coordinates (r, theta), with metric
dr^2 + f(r)^2 dtheta^2 and magnetic potential a(r) dtheta. The energy and the Clairaut-type
momentum F = f^2 theta' - a are the two commuting integrals.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, ClassVar, Sequence

import numpy as np
from numpy import ndarray
from scipy.interpolate import CubicHermiteSpline

from magflow.errors import DomainError
from magflow.integrator.base import SecondOrderSystem
from magflow.surfaces.base import PhaseState

RealFunction = Callable[[float], float]

REVOLUTION_DIAGNOSTICS: tuple[str, ...] = ("energy", "F")


@dataclass(frozen=True, eq=False)
class RevolutionSurface:
    """
    :param f: profile, f > f_min on r_domain.
    :param df: derivative of f.
    :param a: magnetic potential.
    :param da: derivative of a.
    :param r_domain: open interval of admissible r.
    :param f_min: lower bound on f inside the domain.
    """

    f: RealFunction
    df: RealFunction
    a: RealFunction
    da: RealFunction
    r_domain: tuple[float, float] = (-np.inf, np.inf)
    f_min: float = 1e-6
    name: str = "revolution"

    FD_STEP: ClassVar[float] = 1e-5

    def __post_init__(self):
        lo, hi = (float(x) for x in self.r_domain)
        if not lo < hi:
            raise ValueError(f"r_domain must be an open interval (lo < hi), got {self.r_domain!r}.")
        if not self.f_min > 0:
            raise ValueError(f"f_min must be > 0, got {self.f_min!r}.")
        object.__setattr__(self, "r_domain", (lo, hi))

    @classmethod
    def torus_profile(cls, magnetic: bool = True) -> RevolutionSurface:
        """f(r) = 2 + cos r with a(r) = sin r (or a = 0 for the Riemannian limit)."""

        def f(r: float) -> float:
            return 2.0 + np.cos(r)

        def df(r: float) -> float:
            return -np.sin(r)

        if magnetic:
            return cls(f=f, df=df, a=np.sin, da=np.cos, name="torus")
        return cls(f=f, df=df, a=lambda r: 0.0, da=lambda r: 0.0, name="torus(a=0)")

    @classmethod
    def from_table(
        cls,
        r: Sequence[float],
        f: Sequence[float],
        df: Sequence[float],
        a: Sequence[float],
        da: Sequence[float],
        f_min: float = 1e-6,
    ) -> RevolutionSurface:
        """
        Profile from tabulated (r, f, f', a, a'), interpolated by cubic Hermite splines.
        The domain is the open interval between the first and last node.

        :raises ValueError: if r is not strictly increasing or the columns differ in length.
        """
        r = np.asarray(r, dtype=np.float64)
        cols = [np.asarray(c, dtype=np.float64) for c in (f, df, a, da)]
        if any(c.shape != r.shape for c in cols) or r.ndim != 1 or r.size < 2:
            raise ValueError("Tabulated profile columns must be 1D, of equal length >= 2.")
        if np.any(np.diff(r) <= 0):
            raise ValueError("Tabulated r must be strictly increasing.")
        f_spline = CubicHermiteSpline(r, cols[0], cols[1])
        a_spline = CubicHermiteSpline(r, cols[2], cols[3])
        df_spline, da_spline = f_spline.derivative(), a_spline.derivative()
        return cls(
            f=lambda x: float(f_spline(x)),
            df=lambda x: float(df_spline(x)),
            a=lambda x: float(a_spline(x)),
            da=lambda x: float(da_spline(x)),
            r_domain=(float(r[0]), float(r[-1])),
            f_min=f_min,
            name="tabulated",
        )

    def ensure_in_domain(self, r: float) -> float:
        """
        Returns f(r).

        :raises DomainError: if r is outside r_domain or f(r) < f_min.
        """
        lo, hi = self.r_domain
        if not lo < r < hi:
            raise DomainError(f"r = {r!r} left the domain ({lo!r}, {hi!r}) of {self.name!r}.")
        f = float(self.f(r))
        if not f >= self.f_min:
            raise DomainError(f"Profile f(r) = {f!r} < f_min = {self.f_min!r} at r = {r!r}.")
        return f

    def derivative_errors(self, r: float, delta: float = FD_STEP) -> tuple[float, float]:
        """Central-difference consistency |f' - Df|, |a' - Da| at r; O(delta^2)."""
        fd_f = (self.f(r + delta) - self.f(r - delta)) / (2.0 * delta)
        fd_a = (self.a(r + delta) - self.a(r - delta)) / (2.0 * delta)
        return abs(float(fd_f) - float(self.df(r))), abs(float(fd_a) - float(self.da(r)))


@dataclass(frozen=True)
class RevState:
    """Coordinates (r, theta) and velocities (r', theta')."""

    r: float
    theta: float
    dr: float
    dtheta: float

    @classmethod
    def from_phase_state(cls, st: PhaseState) -> RevState:
        (r, theta), (dr, dtheta) = st.q.tolist(), st.v.tolist()
        return cls(r, theta, dr, dtheta)

    def to_phase_state(self) -> PhaseState:
        return PhaseState(np.array([self.r, self.theta]), np.array([self.dr, self.dtheta]))


def _acceleration(s: RevolutionSurface, r: float, dr: float, dtheta: float) -> tuple[float, float]:
    f = s.ensure_in_domain(r)
    ffp = f * float(s.df(r))
    dap = float(s.da(r))
    return ffp * dtheta**2 - dap * dtheta, (dap - 2.0 * ffp * dtheta) * dr / f**2


def revolution_rhs(s: RevolutionSurface, st: RevState) -> tuple[float, float]:
    """
    Euler-Lagrange equations of L = 1/2 (r'^2 + f^2 theta'^2) - a(r) theta':

        r''     = f f' theta'^2 - a' theta'
        theta'' = (a' - 2 f f' theta') r' / f^2

    :raises DomainError: if r is outside the domain.
    """
    return _acceleration(s, st.r, st.dr, st.dtheta)


def clairaut_F(s: RevolutionSurface, st: RevState) -> float:
    """F = f(r)^2 theta' - a(r)."""
    return float(s.f(st.r)) ** 2 * st.dtheta - float(s.a(st.r))


def revolution_energy(s: RevolutionSurface, st: RevState) -> float:
    """E = 1/2 (r'^2 + f(r)^2 theta'^2)."""
    return 0.5 * (st.dr**2 + float(s.f(st.r)) ** 2 * st.dtheta**2)


def rotate_theta(st: RevState, phi: float) -> RevState:
    """The rotation theta -> theta + phi generated by F."""
    return RevState(st.r, st.theta + phi, st.dr, st.dtheta)


def revolution_system(s: RevolutionSurface) -> SecondOrderSystem:
    """Unconstrained real system on (r, theta) with diagnostics energy and F."""

    def rhs(q: ndarray, v: ndarray) -> ndarray:
        return np.array(_acceleration(s, float(q[0]), float(v[0]), float(v[1])))

    def diagnostics(st: PhaseState) -> dict[str, float]:
        rst = RevState.from_phase_state(st)
        return {"energy": revolution_energy(s, rst), "F": clairaut_F(s, rst)}

    return SecondOrderSystem(
        rhs=rhs,
        state_dim=2,
        diagnostics=diagnostics,
        diagnostic_names=REVOLUTION_DIAGNOSTICS,
        name=s.name,
        complex_state=False,
    )
