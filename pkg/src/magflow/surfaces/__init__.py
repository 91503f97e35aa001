"""Level-set hypersurfaces of C^n, their projections and magnetic geodesic right-hand sides."""
from magflow.surfaces.base import LevelSetSurface, PhaseState
from magflow.surfaces.custom import CUSTOM_SURFACES, quartic_surface
from magflow.surfaces.ellipsoid import (
    EllipsoidSpec,
    c_bound_holds,
    ellipsoid_rhs,
    ellipsoid_surface,
    sphere_to_ellipsoid,
)
from magflow.surfaces.magnetic import c_gamma, geodesic_rhs, lorentz_on_surface, tangent_project

__all__ = [
    "CUSTOM_SURFACES",
    "EllipsoidSpec",
    "LevelSetSurface",
    "PhaseState",
    "c_bound_holds",
    "c_gamma",
    "ellipsoid_rhs",
    "ellipsoid_surface",
    "geodesic_rhs",
    "lorentz_on_surface",
    "quartic_surface",
    "sphere_to_ellipsoid",
    "tangent_project",
]
