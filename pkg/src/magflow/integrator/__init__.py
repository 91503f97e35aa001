"""Fixed-step integration of second-order systems, with optional projection onto the constraint surface."""
from magflow.integrator.base import IntegratorConfig, SecondOrderSystem, Trajectory, read_trajectory_csv
from magflow.integrator.rk4 import integrate, project_to_surface, step_rk4
from magflow.integrator.systems import ellipsoid_system, sphere_system, surface_system

__all__ = [
    "IntegratorConfig",
    "SecondOrderSystem",
    "Trajectory",
    "ellipsoid_system",
    "integrate",
    "project_to_surface",
    "read_trajectory_csv",
    "sphere_system",
    "step_rk4",
    "surface_system",
]
