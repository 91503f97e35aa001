"""Classical fixed-step RK4 for second-order systems, with optional projection onto a level set."""
from __future__ import annotations

import warnings

import numpy as np
from numpy import ndarray

from magflow.errors import MagflowError, NumericalFailure, PreconditionError, RegularityError
from magflow.integrator.base import IntegratorConfig, Rhs, SecondOrderSystem, Trajectory, diagnostics_frame
from magflow.logger import log
from magflow.surfaces.base import LevelSetSurface, PhaseState
from magflow.surfaces.magnetic import ensure_phase_state, regular_gradient


def _rk4(rhs: Rhs, q: ndarray, v: ndarray, h: float) -> tuple[ndarray, ndarray]:
    h2 = 0.5 * h
    a1 = rhs(q, v)
    v2 = v + h2 * a1
    a2 = rhs(q + h2 * v, v2)
    v3 = v + h2 * a2
    a3 = rhs(q + h2 * v2, v3)
    v4 = v + h * a3
    a4 = rhs(q + h * v3, v4)
    q_new = q + (h / 6.0) * (v + 2.0 * (v2 + v3) + v4)
    v_new = v + (h / 6.0) * (a1 + 2.0 * (a2 + a3) + a4)
    if not (np.all(np.isfinite(q_new)) and np.all(np.isfinite(v_new))):
        raise NumericalFailure("Non-finite value in RK4 step")
    return q_new, v_new


def step_rk4(sys: SecondOrderSystem, st: PhaseState, h: float) -> PhaseState:
    """
    One classical RK4 step of (q', v') = (v, rhs(q, v)); no projection.

    :raises NumericalFailure: if the step produces non-finite values.
    """
    if not st.is_finite():
        raise NumericalFailure("Non-finite input state to RK4 step")
    q, v = _rk4(sys.rhs, st.q, st.v, h)
    return PhaseState(q, v)


def _project(s: LevelSetSurface, q: ndarray, v: ndarray, tol: float, max_iter: int) -> tuple[ndarray, ndarray]:
    x = q
    residual = s.residual(x)
    trace = [abs(residual)]
    while abs(residual) > tol:
        if len(trace) > max_iter:
            raise NumericalFailure(
                f"Projection onto {s.name!r} did not converge in {max_iter} iterations", trace=trace
            )
        g, gg = regular_gradient(s, x)
        x = x - (residual / gg) * g
        residual = s.residual(x)
        trace.append(abs(residual))

    speed = float(np.linalg.norm(v))
    g, gg = regular_gradient(s, x)
    w = v - (np.vdot(g, v).real / gg) * g
    w_norm = float(np.linalg.norm(w))
    if w_norm > 0.0:
        w = w * (speed / w_norm)
    return x, w


def project_to_surface(
    s: LevelSetSurface, q: ndarray, v: ndarray, tol: float = 1e-12, max_iter: int = 25
) -> PhaseState:
    """
    Retraction onto T Sigma: scalar Newton steps along grad f until |f(q) - c| <= tol, then the
    velocity is projected onto the tangent space and rescaled to its original norm.

    :raises NumericalFailure: if Newton does not converge within max_iter (message carries the trace).
    :raises RegularityError: on a degenerate gradient.
    """
    x, w = _project(s, np.asarray(q, dtype=np.complex128), np.asarray(v, dtype=np.complex128), tol, max_iter)
    return PhaseState(x, w)


def integrate(sys: SecondOrderSystem, st0: PhaseState, cfg: IntegratorConfig) -> Trajectory:
    """
    Integrates over [0, t_end] with fixed step cfg.step and records every cfg.sample_every-th state
    plus the final one.
    With method rk4_projected every step is followed by project_to_surface.

    :raises PreconditionError: if projection is enabled and st0 is not a valid surface state
        (unprojected runs only log a warning).
    :raises NumericalFailure: on any step/projection failure; carries the failing time and
        chains the original error.
    """
    constraint = sys.constraint
    projected = cfg.projected
    if projected and constraint is None:
        warnings.warn(
            f"Method 'rk4_projected' requested for unconstrained system {sys.name!r}; "
            "integrating without projection.",
            UserWarning,
        )
        projected = False
    if projected:
        ensure_phase_state(constraint, st0)
    elif constraint is not None:
        try:
            ensure_phase_state(constraint, st0)
        except (PreconditionError, RegularityError) as err:
            log.warning(f"Unprojected run of {sys.name!r} starts outside its constraint: {err}")

    n_steps, every, h = cfg.n_steps, int(cfg.sample_every), cfg.step
    log.debug(f"Integrating {sys.name!r}: {n_steps} steps of h={h!r} ({cfg.method}), sampling every {every}.")

    q, v = st0.q, st0.v
    steps, states = [0], [st0]
    rows = [sys.diagnose(st0)]
    rhs, tol, max_iter = sys.rhs, cfg.projection_tol, cfg.projection_max_iter
    for k in range(1, n_steps + 1):
        try:
            q, v = _rk4(rhs, q, v, h)
            if projected:
                q, v = _project(constraint, q, v, tol, max_iter)
        except MagflowError as err:
            raise NumericalFailure(f"Integration of {sys.name!r} failed: {err}", time=k * h) from err
        if k % every == 0 or k == n_steps:
            st = PhaseState(q, v)
            steps.append(k)
            states.append(st)
            rows.append(sys.diagnose(st))

    times = np.asarray(steps, dtype=np.float64) * h
    return Trajectory(times, tuple(states), diagnostics_frame(rows, sys.diagnostic_names))
