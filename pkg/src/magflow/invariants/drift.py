"""Drift reports and finite-difference checks evaluated over sampled trajectories."""
from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
from numpy import ndarray

from magflow.errors import PreconditionError
from magflow.integrator.base import Trajectory
from magflow.surfaces.base import LevelSetSurface

INTERPOLATION_MODES: tuple[str, ...] = ("horizontal", "flowline")
TOL_INITIAL_MODE: float = 1e-12
"""Admissible deviation of the initial sample from the declared interpolation mode."""


class DriftReport(NamedTuple):
    """Largest deviation of a sampled quantity from its value at t = 0."""

    quantity: str
    initial: float
    max_drift: float
    t_at_max: float

    def passes(self, tol: float) -> bool:
        return bool(self.max_drift <= tol)

    def as_row(self, tol: float) -> dict[str, object]:
        """Row of the verify table."""
        return {**self._asdict(), "pass": self.passes(tol)}


def drift_of(quantity: str, times: ndarray, values: ndarray) -> DriftReport:
    """DriftReport of a value series against its first entry."""
    values = np.asarray(values, dtype=np.float64)
    deviation = np.abs(values - values[0])
    k = int(np.argmax(deviation))
    return DriftReport(quantity, float(values[0]), float(deviation[k]), float(times[k]))


def max_of(quantity: str, times: ndarray, values: ndarray) -> DriftReport:
    """DriftReport of a residual-type series: reports max |value|."""
    values = np.abs(np.asarray(values, dtype=np.float64))
    k = int(np.argmax(values))
    return DriftReport(quantity, float(values[0]), float(values[k]), float(times[k]))


def drift_report(traj: Trajectory, name: str) -> DriftReport:
    """
    Drift of a recorded diagnostic.

    :raises KeyError: if the diagnostic was not recorded.
    """
    return drift_of(name, traj.times, traj.diagnostic(name))


def _require_samples(traj: Trajectory, minimum: int = 3) -> None:
    if len(traj) < minimum:
        raise PreconditionError(f"Need at least {minimum} samples, got {len(traj)}.")


def ode_residual(traj: Trajectory, rhs: Callable[[ndarray, ndarray], ndarray]) -> float:
    """
    max over interior samples of |(q_{k+1} - 2 q_k + q_{k-1}) / dt^2 - rhs(q_k, v_k)|; O(dt^2) for solutions.
    A shorter final interval is left out.

    :raises PreconditionError: for fewer than 3 samples.
    """
    traj = traj.regular()
    _require_samples(traj)
    qs, dt = traj.qs, traj.dt
    second = (qs[2:] - 2.0 * qs[1:-1] + qs[:-2]) / dt**2
    worst = 0.0
    for k, st in enumerate(traj.states[1:-1]):
        worst = max(worst, float(np.linalg.norm(second[k] - rhs(st.q, st.v))))
    return worst


def hessian_lemma_residual(s: LevelSetSurface, traj: Trajectory) -> float:
    """
    max over interior samples of |d/dt <v, i grad f(q)> + Hess f[v, i v]|, with the derivative taken
    by central differences; O(dt^2) for exact solutions. On E(A) the Hessian term is identically zero.

    :raises PreconditionError: for fewer than 3 samples.
    """
    traj = traj.regular()
    _require_samples(traj)
    pairing = np.array([float(np.vdot(st.v, 1j * s.grad(st.q)).real) for st in traj.states])
    derivative = (pairing[2:] - pairing[:-2]) / (2.0 * traj.dt)
    hess_term = np.array(
        [float(np.vdot(s.hess_apply(st.q, st.v), 1j * st.v).real) for st in traj.states[1:-1]]
    )
    return float(np.max(np.abs(derivative + hess_term)))


def _alpha_series(traj: Trajectory) -> ndarray:
    return 0.5 * np.einsum("ij,ij->i", np.conj(traj.qs), traj.vs).imag


def _flowline_series(traj: Trajectory, r: float) -> ndarray:
    return np.linalg.norm(traj.vs - r * 0.5j * traj.qs, axis=1)


def interpolation_checks(traj: Trajectory, mode: str, r: float = 1.0) -> DriftReport:
    """
    Checks the two limiting regimes of the sphere flow:

    * "horizontal": alpha(v) = 0 initially; reports max |alpha_q(v)| over the samples.
    * "flowline": v = r X_q = r/2 i q initially; reports max |v - r/2 i q| over the samples.

    :raises ValueError: for an unknown mode.
    :raises PreconditionError: if the initial sample is not in the declared mode.
    """
    if mode == "horizontal":
        series, quantity = _alpha_series(traj), "alpha_v"
    elif mode == "flowline":
        series, quantity = _flowline_series(traj, r), f"flowline_deviation(r={r:g})"
    else:
        raise ValueError(f"mode must be one of {INTERPOLATION_MODES!r}, got {mode!r}.")
    if abs(series[0]) > TOL_INITIAL_MODE:
        raise PreconditionError(
            f"Initial state is not {mode}: deviation {abs(series[0]):.3e} > {TOL_INITIAL_MODE:.0e}."
        )
    return max_of(quantity, traj.times, series)
