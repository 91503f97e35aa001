"""The verify suite: drift, identity and equivariance checks of one trajectory, as table rows."""
from __future__ import annotations

from typing import Callable

import numpy as np

from magflow.config.base import SystemConfig
from magflow.config.run_config import Tolerances
from magflow.config.systems import RevolutionSystemConfig
from magflow.integrator.base import Trajectory
from magflow.invariants.conserved import c_identity_residual, contact_pairing, torus_equivariance_check
from magflow.invariants.drift import (
    TOL_INITIAL_MODE,
    DriftReport,
    drift_of,
    drift_report,
    hessian_lemma_residual,
    interpolation_checks,
    max_of,
)
from magflow.revolution import RevState, clairaut_F, revolution_energy, rotate_theta
from magflow.surfaces.ellipsoid import c_bound_holds

EQUIVARIANCE_ANGLES: tuple[float, ...] = (0.3, 1.7, -2.2)
"""Rotation angles used by the equivariance rows."""

Row = dict[str, object]


def _row(report: DriftReport, tol: float, label: str) -> Row:
    row = report.as_row(tol)
    row["quantity"] = f"{label}{report.quantity}"
    return row


def _spot_check_indices(traj: Trajectory) -> list[int]:
    return sorted({0, len(traj) // 2, len(traj) - 1})


def _series(traj: Trajectory, func: Callable) -> np.ndarray:
    return np.array([func(st) for st in traj.states], dtype=np.float64)


def _ellipsoid_rows(cfg: SystemConfig, traj: Trajectory, tol: Tolerances, label: str) -> list[Row]:
    spec = cfg.ellipsoid
    times = traj.times
    identity = _series(traj, lambda st: c_identity_residual(spec, st))
    bound_violation = _series(traj, lambda st: max(0.0, -c_bound_holds(spec, st).margin))
    rows = [
        _row(max_of("c_identity_residual", times, identity), tol.identity, label),
        _row(max_of("c_bound_violation", times, bound_violation), tol.identity, label),
    ]

    equivariance = [
        torus_equivariance_check(spec, traj.states[k], j, m, phi)
        for k in _spot_check_indices(traj)
        for j in range(1, spec.n + 1)
        for m in range(1, spec.n + 1)
        for phi in EQUIVARIANCE_ANGLES
    ]
    report = DriftReport("torus_equivariance", 0.0, float(max(equivariance)), float(times[0]))
    rows.append(_row(report, tol.equivariance, label))

    if len(traj) >= 3:
        residual = hessian_lemma_residual(cfg.surface, traj)
        rows.append(_row(DriftReport("hessian_lemma", 0.0, residual, float("nan")), tol.drift, label))

    if spec.is_sphere:
        pairing = drift_of("contact_pairing", times, _series(traj, contact_pairing))
        rows.append(_row(pairing, tol.contact_pairing, label))
        rows.extend(_row(report, tol.interpolation, label) for report in _interpolation_reports(traj))
    return rows


def _interpolation_reports(traj: Trajectory) -> list[DriftReport]:
    st0 = traj.states[0]
    reports = []
    if abs(0.5 * float(np.vdot(st0.q, st0.v).imag)) <= TOL_INITIAL_MODE:
        reports.append(interpolation_checks(traj, "horizontal"))
    qq = float(np.vdot(st0.q, st0.q).real)
    scale = contact_pairing(st0) / (0.25 * qq) if qq > 0 else 0.0
    if scale != 0.0 and float(np.linalg.norm(st0.v - scale * 0.5j * st0.q)) <= TOL_INITIAL_MODE:
        reports.append(interpolation_checks(traj, "flowline", r=scale))
    return reports


def _revolution_rows(cfg: RevolutionSystemConfig, traj: Trajectory, tol: Tolerances, label: str) -> list[Row]:
    s = cfg.rev_surface
    defects = []
    for k in _spot_check_indices(traj):
        rst = RevState.from_phase_state(traj.states[k])
        for phi in EQUIVARIANCE_ANGLES:
            rotated = rotate_theta(rst, phi)
            defects.append(abs(revolution_energy(s, rotated) - revolution_energy(s, rst)))
            defects.append(abs(clairaut_F(s, rotated) - clairaut_F(s, rst)))
    report = DriftReport("theta_rotation_invariance", 0.0, float(max(defects)), float(traj.times[0]))
    return [_row(report, tol.equivariance, label)]


def verify_rows(cfg: SystemConfig, traj: Trajectory, tol: Tolerances, label: str = "") -> list[Row]:
    """
    Verify-table rows (quantity, initial, max_drift, t_at_max, pass) for one trajectory of cfg's system.

    :param label: prefix for the quantity names (identifies the initial state in sweeps).
    """
    rows = [_row(drift_report(traj, name), tol.drift, label) for name in cfg.conserved]
    if cfg.surface is not None:
        residual = max_of("f_residual", traj.times, traj.diagnostic("f_residual"))
        rows.append(_row(residual, tol.constraint, label))
    if cfg.ellipsoid is not None:
        rows.extend(_ellipsoid_rows(cfg, traj, tol, label))
    if isinstance(cfg, RevolutionSystemConfig):
        rows.extend(_revolution_rows(cfg, traj, tol, label))
    return rows
