"""
The CLI commands. Every command returns its exit code:
0 success, 1 configuration error, 2 numerical failure, 3 invariant violation (verify only).
"""
from __future__ import annotations

import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pandas import DataFrame
from rich.console import Console
from rich.table import Table

from magflow.action_mane import (
    action_sign,
    circle_orbit,
    circle_orbit_action_closed_form,
    circle_orbit_energy,
    free_time_action,
    lagrangian_action,
    mane_value,
)
from magflow.config.run_config import RunConfig
from magflow.config.systems import SphereSystemConfig
from magflow.errors import ConfigError, DomainError, NumericalFailure, PreconditionError, RegularityError
from magflow.integrator.base import IntegratorConfig, Trajectory
from magflow.integrator.rk4 import integrate
from magflow.logger import log
from magflow.schemas.tables import SchemaDriftTable, SchemaOracleTable, SchemaOrbitTable
from magflow.sphere_analytic import solve_sphere_samples
from magflow.surfaces.base import PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec
from magflow.sweeps import run_sweep, sweep_states
from magflow.verification import verify_rows

EXIT_OK: int = 0
EXIT_CONFIG: int = 1
EXIT_NUMERICAL: int = 2
EXIT_VIOLATION: int = 3

NUMERICAL_ERRORS: tuple[type[Exception], ...] = (NumericalFailure, DomainError, RegularityError)

_console = Console(stderr=True)


def _write_table(frame: DataFrame, path: Optional[os.PathLike]) -> None:
    """CSV to path, or to stdout if path is None; floats in shortest round-trip form."""
    if path is None:
        frame.to_csv(sys.stdout, index=False)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False)
        log.info(f"Wrote {len(frame)} row(s) to {str(path)!r}.")


def _show(frame: DataFrame, title: str) -> None:
    """Pretty-prints a table on stderr."""
    table = Table(title=title)
    for col in frame.columns:
        table.add_column(str(col))
    for row in frame.itertuples(index=False):
        table.add_row(*(f"{x:.6g}" if isinstance(x, float) else str(x) for x in row))
    _console.print(table)


def _load(config_path: os.PathLike) -> RunConfig:
    cfg = RunConfig.from_file(config_path)
    log.debug(f"Loaded {str(config_path)!r}: {cfg.system!r}, {cfg.integrator!r}.")
    return cfg


def cmd_simulate(config_path: os.PathLike, output: Optional[os.PathLike] = None) -> int:
    """
    Integrates the configured system from its initial state and writes the trajectory CSV
    (t, q_0.., v_0.., diagnostics) to `output`, the configured output path or stdout.
    """
    try:
        cfg = _load(config_path)
        st0 = cfg.require_initial()
    except ConfigError as err:
        log.error(f"Configuration error: {err}")
        return EXIT_CONFIG
    try:
        traj = integrate(cfg.system.system, st0, cfg.integrator)
    except PreconditionError as err:
        log.error(f"Configuration error: initial: {err}")
        return EXIT_CONFIG
    except NUMERICAL_ERRORS as err:
        log.error(f"Numerical failure: {err}")
        return EXIT_NUMERICAL

    frame = traj.to_frame()
    if cfg.diagnostics is not None:
        dropped = [name for name in traj.diagnostics.columns if name not in cfg.diagnostics]
        frame = frame.drop(columns=dropped)
    _write_table(frame, output or cfg.output_path)
    log.info(f"Simulated {cfg.system.name!r} over [0, {cfg.integrator.t_end!r}]: {len(traj)} sample(s).")
    return EXIT_OK


def cmd_verify(config_path: os.PathLike, output: Optional[os.PathLike] = None, progress: bool = True) -> int:
    """
    Runs the verify suite on the configured initial state plus `sweep.count` seeded random states and
    writes the table (quantity, initial, max_drift, t_at_max, pass). Exit 3 if any row fails.
    """
    try:
        cfg = _load(config_path)
        states: list[PhaseState] = ([cfg.initial] if cfg.initial is not None else []) + sweep_states(
            cfg.system, cfg.seed, cfg.sweep_count
        )
        if not states:
            raise ConfigError("initial", "missing; give an initial state or a non-empty sweep")
    except ConfigError as err:
        log.error(f"Configuration error: {err}")
        return EXIT_CONFIG

    labelled = list(enumerate(states))
    multi = len(labelled) > 1

    def run(item: tuple[int, PhaseState]) -> list[dict[str, object]]:
        k, st = item
        traj = integrate(cfg.system.system, st, cfg.integrator)
        return verify_rows(cfg.system, traj, cfg.tolerances, label=f"state{k}:" if multi else "")

    try:
        per_state = run_sweep(run, labelled, desc=f"Verifying {cfg.system.name}", progress=progress)
    except PreconditionError as err:
        log.error(f"Configuration error: initial: {err}")
        return EXIT_CONFIG
    except NUMERICAL_ERRORS as err:
        log.error(f"Numerical failure: {err}")
        return EXIT_NUMERICAL

    frame = SchemaDriftTable().to_dframe([row for rows in per_state for row in rows])
    _write_table(frame, output)
    failed = frame[~frame["pass"]]
    if len(failed):
        _show(failed, title="Invariant violations")
        log.error(f"{len(failed)} of {len(frame)} check(s) failed for {cfg.system.name!r}.")
        return EXIT_VIOLATION
    log.info(f"All {len(frame)} check(s) passed for {cfg.system.name!r}.")
    return EXIT_OK


def orbit_rows(
    spec: EllipsoidSpec, omegas: Sequence[float], axis: int, samples: int
) -> list[dict[str, object]]:
    """
    One orbits-table row per omega: the axis circle orbit, its actions by quadrature and the closed form.

    :raises PreconditionError: if an omega is zero.
    """
    rows = []
    for omega in omegas:
        traj: Trajectory = circle_orbit(spec, axis, omega, samples)
        kappa = circle_orbit_energy(spec, axis, omega)
        s_free = free_time_action(traj, kappa)
        closed = circle_orbit_action_closed_form(spec, axis, omega)
        rows.append(
            {
                "axis": axis,
                "omega": omega,
                "kappa": kappa,
                "S_L": lagrangian_action(traj),
                "S_free": s_free,
                "closed_form": closed,
                "abs_err": abs(s_free - closed),
                "sign": action_sign(s_free),
            }
        )
    return rows


def mane_row(spec: EllipsoidSpec) -> dict[str, object]:
    """Trailer row of the orbits table: axis 'mane' with kappa = a_n / 8 and no orbit columns."""
    nan = float("nan")
    return {
        "axis": "mane",
        "omega": nan,
        "kappa": mane_value(spec),
        "S_L": nan,
        "S_free": nan,
        "closed_form": nan,
        "abs_err": nan,
        "sign": None,
    }


def cmd_orbits(
    a: Sequence[float],
    omegas: Sequence[float],
    axis: Optional[int] = None,
    samples: int = 2049,
    output: Optional[os.PathLike] = None,
) -> int:
    """
    Free-time actions of axis circle orbits on E(diag(a)) for the given frequencies.
    The table ends with a 'mane' row carrying the Mane value a_n / 8 (header only when omegas is empty).
    """
    try:
        spec = EllipsoidSpec(tuple(a))
    except ValueError as err:
        log.error(f"Configuration error: a: {err}")
        return EXIT_CONFIG
    axis = spec.n if axis is None else axis
    if not 1 <= axis <= spec.n:
        log.error(f"Configuration error: axis: must be in [1, {spec.n}], got {axis!r}")
        return EXIT_CONFIG
    if any(omega == 0 or not np.isfinite(omega) for omega in omegas):
        log.error("Configuration error: omega: frequencies must be finite and non-zero")
        return EXIT_CONFIG
    try:
        rows = orbit_rows(spec, omegas, axis, samples)
    except PreconditionError as err:
        log.error(f"Configuration error: {err}")
        return EXIT_CONFIG

    kappa_c = mane_value(spec)
    table = rows + [mane_row(spec)] if rows else []
    _write_table(SchemaOrbitTable().to_dframe(table), output)
    log.info(f"Mane critical value a_n/8 = {kappa_c!r}.")
    for row in rows:
        if row["kappa"] <= kappa_c and row["sign"] > 0:
            log.warning(
                f"Positive free-time action at kappa = {row['kappa']!r} <= a_n/8 (omega = {row['omega']!r})."
            )
    return EXIT_OK


def oracle_errors(cfg: SphereSystemConfig, st0: PhaseState, icfg: IntegratorConfig) -> dict[str, float]:
    """Sup-norm distance (over samples) between the integrated and the closed-form sphere trajectory."""
    traj = integrate(cfg.system, st0, icfg)
    exact = solve_sphere_samples(cfg.radius, st0, traj.times)
    errors = np.array(
        [max(np.max(np.abs(st.q - ex.q)), np.max(np.abs(st.v - ex.v))) for st, ex in zip(traj.states, exact)]
    )
    k = int(np.argmax(errors))
    return {"h": icfg.step, "sup_error": float(errors[k]), "t_at_max": float(traj.times[k])}


def cmd_oracle(config_path: os.PathLike, output: Optional[os.PathLike] = None) -> int:
    """
    Compares the integrator against the closed-form sphere solution at step h and h/2 and reports
    both sup-norm errors and their ratio (about 16 for a fourth-order method).
    """
    try:
        cfg = _load(config_path)
        st0 = cfg.require_initial()
        if not isinstance(cfg.system, SphereSystemConfig) or cfg.system.potential is not None:
            raise ConfigError("system.type", "oracle comparison needs a sphere system without potential")
    except ConfigError as err:
        log.error(f"Configuration error: {err}")
        return EXIT_CONFIG

    icfg = cfg.integrator
    halved = replace(icfg, step=icfg.step / 2.0, sample_every=2 * icfg.sample_every)
    try:
        rows = [oracle_errors(cfg.system, st0, c) for c in (icfg, halved)]
    except PreconditionError as err:
        log.error(f"Configuration error: initial: {err}")
        return EXIT_CONFIG
    except NUMERICAL_ERRORS as err:
        log.error(f"Numerical failure: {err}")
        return EXIT_NUMERICAL

    fine = rows[1]["sup_error"]
    ratio = rows[0]["sup_error"] / fine if fine > 0 else float("inf")
    rows[0]["ratio"], rows[1]["ratio"] = float("nan"), ratio
    _write_table(SchemaOracleTable().to_dframe(rows), output)
    log.info(f"Error ratio under h -> h/2: {ratio:.3f}.")
    if rows[0]["sup_error"] > cfg.tolerances.oracle:
        log.warning(
            f"Sup error {rows[0]['sup_error']:.3e} exceeds {cfg.tolerances.oracle:.1e} at h={icfg.step!r}."
        )
    return EXIT_OK
