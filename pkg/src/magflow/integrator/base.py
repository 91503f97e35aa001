"""Types shared by the integrators: second-order systems, integrator settings and trajectories."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, ClassVar, Mapping, Optional, Sequence

import numpy as np
import pandas as pd
from numpy import ndarray
from pandas import DataFrame

from magflow.errors import DimensionError
from magflow.schemas.base import Schema
from magflow.schemas.tables import trajectory_schema
from magflow.surfaces.base import LevelSetSurface, PhaseState

Rhs = Callable[[ndarray, ndarray], ndarray]
Diagnostics = Callable[[PhaseState], Mapping[str, float]]

STEP_COUNT_RTOL: float = 1e-9


def whole_step_count(t_end: float, step: float, rtol: float = STEP_COUNT_RTOL) -> bool:
    """True if t_end is an integer multiple of step (up to rtol relative to the step count)."""
    ratio = t_end / step
    return abs(ratio - round(ratio)) <= rtol * max(1.0, ratio)


@dataclass(frozen=True)
class SecondOrderSystem:
    """
    q'' = rhs(q, v), optionally constrained to a level set (used for projection and residuals).

    :param rhs: deterministic, side-effect free acceleration.
    :param state_dim: number of position coordinates (complex for hypersurfaces, real otherwise).
    :param constraint: (optional) level-set surface the motion is confined to.
    :param diagnostics: (optional) per-sample diagnostics evaluated from the state.
    :param diagnostic_names: names (and output order) of the diagnostics.
    """

    rhs: Rhs
    state_dim: int
    constraint: Optional[LevelSetSurface] = None
    diagnostics: Optional[Diagnostics] = None
    diagnostic_names: tuple[str, ...] = ()
    name: str = "system"
    complex_state: bool = True

    @property
    def n_real(self) -> int:
        """Number of real position coordinates."""
        return 2 * self.state_dim if self.complex_state else self.state_dim

    def diagnose(self, st: PhaseState) -> dict[str, float]:
        if self.diagnostics is None:
            return {}
        values = self.diagnostics(st)
        return {name: float(values[name]) for name in self.diagnostic_names}


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step integration settings."""

    METHODS: ClassVar[tuple[str, ...]] = ("rk4", "rk4_projected")

    method: str = "rk4_projected"
    step: float = 1e-3
    t_end: float = 1.0
    sample_every: int = 10
    projection_tol: float = 1e-12
    projection_max_iter: int = 25

    def __post_init__(self):
        if self.method not in self.METHODS:
            raise ValueError(f"method must be one of {self.METHODS!r}, got {self.method!r}.")
        if not (np.isfinite(self.step) and self.step > 0):
            raise ValueError(f"step must be > 0, got {self.step!r}.")
        if not (np.isfinite(self.t_end) and self.t_end >= 0):
            raise ValueError(f"t_end must be >= 0, got {self.t_end!r}.")
        if self.t_end > 0 and self.step > self.t_end:
            raise ValueError(f"step ({self.step!r}) must not exceed t_end ({self.t_end!r}).")
        if not whole_step_count(self.t_end, self.step):
            raise ValueError(f"t_end ({self.t_end!r}) must be a whole number of steps of {self.step!r}.")
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ValueError(f"sample_every must be a positive integer, got {self.sample_every!r}.")
        if not self.projection_tol > 0:
            raise ValueError(f"projection_tol must be > 0, got {self.projection_tol!r}.")
        if int(self.projection_max_iter) != self.projection_max_iter or self.projection_max_iter < 1:
            raise ValueError(f"projection_max_iter must be >= 1, got {self.projection_max_iter!r}.")

    @property
    def n_steps(self) -> int:
        """Number of steps of size `step` covering [0, t_end]."""
        return int(round(self.t_end / self.step))

    @property
    def projected(self) -> bool:
        return self.method == "rk4_projected"

    @property
    def sample_spacing(self) -> float:
        return self.step * self.sample_every


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Uniformly sampled states with per-sample diagnostics.

    :param times: sample times, strictly increasing with uniform spacing; the final interval may be shorter.
    :param states: one PhaseState per sample.
    :param diagnostics: DataFrame with one row per sample and one column per diagnostic.
    """

    times: ndarray
    states: tuple[PhaseState, ...]
    diagnostics: DataFrame = field(default_factory=pd.DataFrame)

    UNIFORMITY_RTOL: ClassVar[float] = 1e-9

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", tuple(self.states))
        diagnostics = self.diagnostics
        if diagnostics.empty and len(diagnostics.columns) == 0:
            diagnostics = pd.DataFrame(index=range(len(times)))
        object.__setattr__(self, "diagnostics", diagnostics.reset_index(drop=True))
        if not (len(times) == len(self.states) == len(self.diagnostics)):
            raise DimensionError(
                f"Trajectory lengths differ: {len(times)} times, {len(self.states)} states, "
                f"{len(self.diagnostics)} diagnostic rows."
            )
        if len(times) > 1:
            spacing = np.diff(times)
            if np.any(spacing <= 0):
                raise ValueError("Trajectory times must be strictly increasing.")
            slack = self.UNIFORMITY_RTOL * max(1.0, abs(times[-1]))
            # The last interval may be shorter: the final state of a run is always recorded.
            uneven = np.max(np.abs(spacing[:-1] - spacing[0]), initial=0.0) > slack
            if uneven or spacing[-1] > spacing[0] + slack:
                raise ValueError("Trajectory times must be uniformly spaced (up to a shorter final interval).")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def dt(self) -> float:
        """Sample spacing (0 for single-sample trajectories)."""
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def regular_count(self) -> int:
        """Number of leading samples on the uniform grid (all of them unless the last interval is short)."""
        if len(self.times) < 3:
            return len(self.times)
        short = self.times[-1] - self.times[-2] < self.dt - self.UNIFORMITY_RTOL * max(1.0, abs(self.times[-1]))
        return len(self.times) - 1 if short else len(self.times)

    def regular(self) -> Trajectory:
        """The uniformly spaced prefix; finite-difference diagnostics are taken on this."""
        count = self.regular_count
        if count == len(self.times):
            return self
        return Trajectory(self.times[:count], self.states[:count], self.diagnostics.iloc[:count])

    @cached_property
    def qs(self) -> ndarray:
        """Positions stacked as a (samples, dim) array."""
        return np.stack([st.q for st in self.states])

    @cached_property
    def vs(self) -> ndarray:
        return np.stack([st.v for st in self.states])

    def diagnostic(self, name: str) -> ndarray:
        """
        :raises KeyError: if the diagnostic was not recorded.
        """
        if name not in self.diagnostics.columns:
            raise KeyError(f"Diagnostic {name!r} not recorded; available: {list(self.diagnostics.columns)!r}.")
        return self.diagnostics[name].to_numpy(dtype=np.float64)

    def schema(self) -> Schema:
        n_real = self.states[0].real_q().size if self.states else 0
        return trajectory_schema(n_real, [str(c) for c in self.diagnostics.columns])

    def to_frame(self) -> DataFrame:
        """Flat table t, q_0.., v_0.., diagnostics... (interleaved re/im for complex states)."""
        schema = self.schema()
        data = np.column_stack(
            [
                self.times,
                np.array([st.real_q() for st in self.states], dtype=np.float64),
                np.array([st.real_v() for st in self.states], dtype=np.float64),
                self.diagnostics.to_numpy(dtype=np.float64),
            ]
        )
        return pd.DataFrame(data, columns=schema.columns).astype(schema.to_dict())

    def write_csv(self, path: os.PathLike) -> None:
        """Writes the flat table; floats use pandas' shortest round-trip representation."""
        self.to_frame().to_csv(path, index=False)


def read_trajectory_csv(path: os.PathLike, n_real: int, complex_state: bool = True) -> Trajectory:
    """
    Reads a trajectory CSV written by Trajectory.write_csv.

    :param n_real: number of real position coordinates per sample.
    :param complex_state: interpret coordinates as interleaved complex numbers.
    :raises KeyError: if expected columns are missing.
    """
    frame = pd.read_csv(path, float_precision="round_trip")
    q_cols = [f"q_{k}" for k in range(n_real)]
    v_cols = [f"v_{k}" for k in range(n_real)]
    missing = [c for c in ["t", *q_cols, *v_cols] if c not in frame.columns]
    if missing:
        raise KeyError(f"Trajectory file {str(path)!r} lacks column(s) {missing!r}.")
    qs = frame[q_cols].to_numpy(dtype=np.float64)
    vs = frame[v_cols].to_numpy(dtype=np.float64)
    if complex_state:
        states = [PhaseState.from_reals(q, v) for q, v in zip(qs, vs)]
    else:
        states = [PhaseState(q, v) for q, v in zip(qs, vs)]
    diag_cols = [c for c in frame.columns if c not in {"t", *q_cols, *v_cols}]
    return Trajectory(frame["t"].to_numpy(dtype=np.float64), tuple(states), frame[diag_cols].copy())


def diagnostics_frame(rows: Sequence[Mapping[str, float]], names: Sequence[str]) -> DataFrame:
    """Per-sample diagnostic rows -> DataFrame with a column per name."""
    return pd.DataFrame(
        {name: [float(row[name]) for row in rows] for name in names}, index=range(len(rows)), dtype=np.float64
    )
