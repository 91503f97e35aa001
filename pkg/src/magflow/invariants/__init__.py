"""Conserved quantities, drift reports and the testable dynamical properties of the flow."""
from magflow.invariants.conserved import (
    c_identity_residual,
    contact_pairing,
    energy,
    integrals_independence_rank,
    moment_map_F,
    moment_maps,
    torus_equivariance_check,
)
from magflow.invariants.drift import (
    DriftReport,
    drift_report,
    hessian_lemma_residual,
    interpolation_checks,
    ode_residual,
)

__all__ = [
    "DriftReport",
    "c_identity_residual",
    "contact_pairing",
    "drift_report",
    "energy",
    "hessian_lemma_residual",
    "integrals_independence_rank",
    "interpolation_checks",
    "moment_map_F",
    "moment_maps",
    "ode_residual",
    "torus_equivariance_check",
]
