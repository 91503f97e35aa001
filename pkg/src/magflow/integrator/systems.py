"""Second-order systems for magnetic geodesics on level-set hypersurfaces and ellipsoids."""
from __future__ import annotations

from typing import Optional

import numpy as np
from numpy import ndarray

from magflow.integrator.base import SecondOrderSystem
from magflow.invariants.conserved import moment_maps
from magflow.surfaces.base import LevelSetSurface, PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec, ellipsoid_acceleration, ellipsoid_c, ellipsoid_surface
from magflow.surfaces.magnetic import c_gamma, geodesic_acceleration
from magflow.surfaces.potential import PhaseInvariantPotential, total_energy

SURFACE_DIAGNOSTICS: tuple[str, ...] = ("energy", "C", "f_residual", "alpha_v")


def _alpha_v(st: PhaseState) -> float:
    return 0.5 * float(np.vdot(st.q, st.v).imag)


def surface_system(
    s: LevelSetSurface, potential: Optional[PhaseInvariantPotential] = None, name: Optional[str] = None
) -> SecondOrderSystem:
    """Magnetic geodesics on an arbitrary level set; diagnostics: energy, C, f_residual, alpha_v."""

    def rhs(q: ndarray, v: ndarray) -> ndarray:
        return geodesic_acceleration(s, q, v, potential)

    def diagnostics(st: PhaseState) -> dict[str, float]:
        return {
            "energy": total_energy(potential, st),
            "C": c_gamma(s, st),
            "f_residual": s.residual(st.q),
            "alpha_v": _alpha_v(st),
        }

    return SecondOrderSystem(
        rhs=rhs,
        state_dim=s.dim_n,
        constraint=s,
        diagnostics=diagnostics,
        diagnostic_names=SURFACE_DIAGNOSTICS,
        name=name or s.name,
    )


def ellipsoid_diagnostic_names(n: int) -> tuple[str, ...]:
    """energy, C, F_1..F_n, f_residual, alpha_v."""
    return ("energy", "C", *(f"F_{j}" for j in range(1, n + 1)), "f_residual", "alpha_v")


def ellipsoid_system(
    spec: EllipsoidSpec, potential: Optional[PhaseInvariantPotential] = None, name: Optional[str] = None
) -> SecondOrderSystem:
    """
    Magnetic geodesics on E(A). Without a potential the ellipsoid form of the equation is used
    (C taken from the current state); with one, the general level-set form with the extra -grad V term.
    With a potential the energy diagnostic is E_V = 1/2 |v|^2 + V(q).
    """
    s = ellipsoid_surface(spec)
    inv_a = 1.0 / spec.a_array

    if potential is None:

        def rhs(q: ndarray, v: ndarray) -> ndarray:
            return ellipsoid_acceleration(inv_a, q, v)

    else:

        def rhs(q: ndarray, v: ndarray) -> ndarray:
            return geodesic_acceleration(s, q, v, potential)

    names = ellipsoid_diagnostic_names(spec.n)
    f_names = names[2 : 2 + spec.n]

    def diagnostics(st: PhaseState) -> dict[str, float]:
        row = {"energy": total_energy(potential, st), "C": ellipsoid_c(spec, st)}
        row.update(zip(f_names, moment_maps(spec, st).tolist()))
        row["f_residual"] = s.residual(st.q)
        row["alpha_v"] = _alpha_v(st)
        return row

    return SecondOrderSystem(
        rhs=rhs,
        state_dim=spec.n,
        constraint=s,
        diagnostics=diagnostics,
        diagnostic_names=names,
        name=name or s.name,
    )


def sphere_system(n: int, radius: float = 1.0) -> SecondOrderSystem:
    """The round sphere of the given radius in C^n (a_j = radius^2)."""
    return ellipsoid_system(EllipsoidSpec.sphere(n, radius))
