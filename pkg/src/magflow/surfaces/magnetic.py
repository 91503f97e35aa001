"""
Projections, induced Lorentz force and the magnetic geodesic equation on a level-set hypersurface
of flat C^n, where the ambient Lorentz force is multiplication by i.
"""
from __future__ import annotations

from typing import Optional, TYPE_CHECKING

import numpy as np
from numpy import ndarray

from magflow.errors import PreconditionError, RegularityError
from magflow.geometry.complex_geometry import VectorLike, as_complex
from magflow.surfaces.base import EPS_REG, TOL_CONSTRAINT, TOL_TANGENT, LevelSetSurface, PhaseState

if TYPE_CHECKING:
    from magflow.surfaces.potential import PhaseInvariantPotential


def regular_gradient(s: LevelSetSurface, x: ndarray, eps_reg: float = EPS_REG) -> tuple[ndarray, float]:
    """
    Returns grad f(x) and |grad f(x)|^2.

    :raises RegularityError: if |grad f(x)| <= eps_reg.
    """
    g = s.grad(x)
    gg = float(np.vdot(g, g).real)
    if not gg > eps_reg**2:
        raise RegularityError(
            f"Degenerate gradient |grad f| = {np.sqrt(gg):.3e} <= {eps_reg:.1e} on surface {s.name!r}."
        )
    return g, gg


def tangent_project(s: LevelSetSurface, x: VectorLike, v: VectorLike) -> ndarray:
    """
    Orthogonal projection onto T_x Sigma: v - <v, grad f>/|grad f|^2 grad f.

    :raises RegularityError: on a degenerate gradient.
    """
    x_, v_ = as_complex(x), as_complex(v)
    g, gg = regular_gradient(s, x_)
    return v_ - (np.vdot(g, v_).real / gg) * g


def lorentz_on_surface(s: LevelSetSurface, x: VectorLike, v: VectorLike) -> ndarray:
    """Induced Lorentz force: tangential part of i v."""
    return tangent_project(s, x, 1j * as_complex(v))


def geodesic_rhs(
    s: LevelSetSurface, st: PhaseState, potential: Optional[PhaseInvariantPotential] = None
) -> ndarray:
    """
    Acceleration of the magnetic geodesic through st:

        q'' = i v - grad V + mu grad f,
        mu  = (<v, i grad f> - Hess f[v, v] + <grad V, grad f>) / |grad f|^2,

    where the multiplier mu is the one for which <q'', grad f> = -Hess f[v, v], so that
    <v, grad f> stays zero along solutions. Without a potential (V = 0) this is the
    hypersurface form of the magnetic geodesic equation.

    :raises RegularityError: on a degenerate gradient.
    """
    return geodesic_acceleration(s, st.q, st.v, potential)


def geodesic_acceleration(
    s: LevelSetSurface, q: ndarray, v: ndarray, potential: Optional[PhaseInvariantPotential] = None
) -> ndarray:
    """geodesic_rhs on raw arrays (no PhaseState wrapping); used by the integrator hot loop."""
    g, gg = regular_gradient(s, q)
    hv = s.hess_apply(q, v)
    numerator = np.vdot(v, 1j * g).real - np.vdot(hv, v).real
    acc = 1j * v
    if potential is not None:
        grad_v = potential.grad(q)
        numerator += np.vdot(grad_v, g).real
        acc = acc - grad_v
    return acc + (numerator / gg) * g


def c_gamma(s: LevelSetSurface, st: PhaseState) -> float:
    """C = 1/2 <v, i grad f(q)>_R."""
    return 0.5 * float(np.vdot(st.v, 1j * s.grad(st.q)).real)


def ensure_phase_state(
    s: LevelSetSurface,
    st: PhaseState,
    tol_constraint: float = TOL_CONSTRAINT,
    tol_tangent: float = TOL_TANGENT,
) -> None:
    """
    Checks |f(q) - c| <= tol_constraint and |<v, grad f(q)>| <= tol_tangent |v| |grad f(q)|.

    :raises PreconditionError: if st is off the surface or not tangent.
    :raises RegularityError: on a degenerate gradient.
    """
    if st.dim != s.dim_n:
        raise PreconditionError(f"State has dimension {st.dim}, surface {s.name!r} has n = {s.dim_n}.")
    if (res := abs(s.residual(st.q))) > tol_constraint:
        raise PreconditionError(f"Position is off the surface: |f(q) - c| = {res:.3e} > {tol_constraint:.1e}.")
    g, gg = regular_gradient(s, st.q)
    normal = abs(float(np.vdot(st.v, g).real))
    if normal > tol_tangent * st.speed * np.sqrt(gg):
        raise PreconditionError(f"Velocity is not tangent: |<v, grad f>| = {normal:.3e}.")
