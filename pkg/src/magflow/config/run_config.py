"""Run configuration: JSON file -> validated RunConfig."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional

from magflow.config.base import SystemConfig, as_float, as_float_list, as_int, as_mapping, require
from magflow.config.systems import parse_system
from magflow.errors import ConfigError
from magflow.integrator.base import IntegratorConfig, whole_step_count
from magflow.surfaces.base import PhaseState

TOP_LEVEL_KEYS: tuple[str, ...] = (
    "system",
    "initial",
    "integrator",
    "output",
    "diagnostics",
    "seed",
    "sweep",
    "tolerances",
)


@dataclass(frozen=True)
class Tolerances:
    """Pass thresholds of the verify suite."""

    drift: float = 1e-7
    """max |Q(t) - Q(0)| for energy, C, F_j and the revolution integrals."""
    identity: float = 1e-12
    """Pointwise algebraic identities (C = 1/2 + sum F_j / a_j)."""
    equivariance: float = 1e-12
    contact_pairing: float = 1e-8
    interpolation: float = 1e-7
    constraint: float = 1e-9
    """max |f(q) - c| over the samples."""
    oracle: float = 1e-8

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Tolerances:
        known = {f.name for f in fields(cls)}
        values: dict[str, float] = {}
        for key, value in data.items():
            if key not in known:
                raise ConfigError(f"tolerances.{key}", f"unknown tolerance; known: {sorted(known)!r}")
            values[key] = as_float(value, f"tolerances.{key}")
            if not values[key] > 0:
                raise ConfigError(f"tolerances.{key}", f"must be > 0, got {value!r}")
        return cls(**values)


@dataclass(frozen=True)
class RunConfig:
    """
    A validated run configuration.

    :param system: system to integrate.
    :param initial: (optional) initial state; verify may run on seeded random states instead.
    :param integrator: integration settings.
    :param output_path: (optional) where simulate writes its CSV (stdout if None).
    :param diagnostics: (optional) subset of diagnostic columns to write.
    :param seed: seed of the sweep generator.
    :param sweep_count: number of seeded random initial states added by verify.
    :param tolerances: verify thresholds.
    """

    system: SystemConfig
    initial: Optional[PhaseState] = None
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    output_path: Optional[Path] = None
    diagnostics: Optional[tuple[str, ...]] = None
    seed: int = 0
    sweep_count: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)

    @classmethod
    def from_dict(cls, data: Any) -> RunConfig:
        """
        :raises ConfigError: naming the first offending field.
        """
        data = as_mapping(data, "<root>")
        for key in data:
            if key not in TOP_LEVEL_KEYS:
                raise ConfigError(key, f"unknown field; expected one of {list(TOP_LEVEL_KEYS)!r}")

        initial_data = as_mapping(data["initial"], "initial") if "initial" in data else None
        n_hint = None
        if initial_data is not None:
            n_hint = len(as_float_list(require(initial_data, "q", "initial"), "initial.q")) // 2
        system = parse_system(require(data, "system", "<root>"), n_hint=n_hint)

        initial = None
        if initial_data is not None:
            q = as_float_list(require(initial_data, "q", "initial"), "initial.q")
            v = as_float_list(require(initial_data, "v", "initial"), "initial.v")
            initial = system.make_state(q, v)

        integrator = _parse_integrator(as_mapping(data.get("integrator", {}), "integrator"))

        output_path = None
        if "output" in data:
            output = as_mapping(data["output"], "output")
            if "path" in output:
                if not isinstance(output["path"], str) or not output["path"]:
                    raise ConfigError("output.path", f"expected a non-empty string, got {output['path']!r}")
                output_path = Path(output["path"])

        diagnostics = None
        if "diagnostics" in data:
            selection = data["diagnostics"]
            if not isinstance(selection, list) or not all(isinstance(x, str) for x in selection):
                raise ConfigError("diagnostics", f"expected a list of names, got {selection!r}")
            unknown = [x for x in selection if x not in system.system.diagnostic_names]
            if unknown:
                raise ConfigError(
                    "diagnostics", f"unknown {unknown!r}; available: {list(system.system.diagnostic_names)!r}"
                )
            diagnostics = tuple(selection)

        seed = as_int(data.get("seed", 0), "seed", minimum=0)
        sweep_count = 0
        if "sweep" in data:
            sweep = as_mapping(data["sweep"], "sweep")
            sweep_count = as_int(require(sweep, "count", "sweep"), "sweep.count", minimum=0)
        tolerances = Tolerances.from_dict(as_mapping(data.get("tolerances", {}), "tolerances"))

        return cls(
            system=system,
            initial=initial,
            integrator=integrator,
            output_path=output_path,
            diagnostics=diagnostics,
            seed=seed,
            sweep_count=sweep_count,
            tolerances=tolerances,
        )

    @classmethod
    def from_file(cls, path: os.PathLike | str) -> RunConfig:
        """
        :raises ConfigError: if the file cannot be read, is not valid JSON or fails validation.
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as err:
            raise ConfigError(str(path), f"cannot read configuration: {err}") from err
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(str(path), f"invalid JSON: {err}") from err
        return cls.from_dict(data)

    def require_initial(self) -> PhaseState:
        """
        :raises ConfigError: if the configuration has no initial state.
        """
        if self.initial is None:
            raise ConfigError("initial", "missing required field")
        return self.initial


def _parse_integrator(data: Mapping[str, Any]) -> IntegratorConfig:
    defaults = IntegratorConfig()
    method = data.get("method", defaults.method)
    if method not in IntegratorConfig.METHODS:
        raise ConfigError("integrator.method", f"expected one of {IntegratorConfig.METHODS!r}, got {method!r}")
    step = as_float(data.get("step", defaults.step), "integrator.step")
    t_end = as_float(data.get("t_end", defaults.t_end), "integrator.t_end")
    sample_every = as_int(data.get("sample_every", defaults.sample_every), "integrator.sample_every", minimum=1)
    tol = as_float(data.get("projection_tol", defaults.projection_tol), "integrator.projection_tol")
    max_iter = as_int(
        data.get("projection_max_iter", defaults.projection_max_iter),
        "integrator.projection_max_iter",
        minimum=1,
    )
    if not step > 0:
        raise ConfigError("integrator.step", f"must be > 0, got {step!r}")
    if not t_end >= 0:
        raise ConfigError("integrator.t_end", f"must be >= 0, got {t_end!r}")
    if t_end > 0 and step > t_end:
        raise ConfigError("integrator.step", f"step ({step!r}) must not exceed t_end ({t_end!r})")
    if not whole_step_count(t_end, step):
        raise ConfigError("integrator.t_end", f"must be a whole number of steps of {step!r}, got {t_end!r}")
    if not tol > 0:
        raise ConfigError("integrator.projection_tol", f"must be > 0, got {tol!r}")
    return IntegratorConfig(
        method=method,
        step=step,
        t_end=t_end,
        sample_every=sample_every,
        projection_tol=tol,
        projection_max_iter=max_iter,
    )
