"""
Baseclass for system configurations: the part of a run configuration that says which system is
integrated, how its states are laid out and which of its quantities are conserved.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from functools import cached_property
from typing import Any, ClassVar, Mapping, Optional, Sequence

import numpy as np

from magflow.errors import ConfigError
from magflow.integrator.base import SecondOrderSystem
from magflow.surfaces.base import LevelSetSurface, PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec


class SystemConfig(ABC):

    TYPE: ClassVar[str] = ""
    """Value of the "type" key selecting this configuration."""

    FIELD: ClassVar[str] = "system"
    """Dotted path of the system section inside a run configuration."""

    def __init__(self, name: str):
        """
        Describes one system to integrate.

        :param name: name used in logs and reports.
        """
        self.name: str = name

    @classmethod
    @abstractmethod
    def from_dict(cls, data: Mapping[str, Any], n_hint: Optional[int] = None) -> SystemConfig:
        """
        Parses the system section of a run configuration.
        _Must_ be implemented by subclasses.

        :param data: the (JSON-decoded) system section.
        :param n_hint: (optional) complex dimension implied by the initial state, for systems
            whose section does not state it.
        :raises ConfigError: naming the offending field.
        """
        ...

    @cached_property
    @abstractmethod
    def system(self) -> SecondOrderSystem:
        """The second-order system to integrate. _Must_ be implemented by subclasses."""
        ...

    @property
    @abstractmethod
    def n_real(self) -> int:
        """Number of real position coordinates of a state."""
        ...

    @property
    def surface(self) -> Optional[LevelSetSurface]:
        """Constraint surface, if any."""
        return self.system.constraint

    @property
    def ellipsoid(self) -> Optional[EllipsoidSpec]:
        """Ellipsoid data, for systems living on E(A)."""
        return None

    @property
    @abstractmethod
    def conserved(self) -> tuple[str, ...]:
        """Diagnostics whose drift the verify suite checks."""
        ...

    @abstractmethod
    def random_state(self, rng: np.random.Generator) -> PhaseState:
        """Random admissible initial state (for seeded sweeps)."""
        ...

    def make_state(self, q: Sequence[float], v: Sequence[float], field: str = "initial") -> PhaseState:
        """
        Builds a state from the real coordinates given in a run configuration.

        :raises ConfigError: on a length mismatch with the system.
        """
        for key, values in (("q", q), ("v", v)):
            if len(values) != self.n_real:
                raise ConfigError(
                    f"{field}.{key}",
                    f"expected {self.n_real} reals for system {self.name!r}, got {len(values)}",
                )
        return PhaseState.from_reals(q, v)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"


def require(data: Mapping[str, Any], key: str, field: str) -> Any:
    """
    :raises ConfigError: if key is missing.
    """
    if key not in data:
        raise ConfigError(f"{field}.{key}", "missing required field")
    return data[key]


def as_float(value: Any, field: str) -> float:
    """
    :raises ConfigError: if value is not a finite real number.
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
        raise ConfigError(field, f"expected a finite number, got {value!r}")
    return float(value)


def as_int(value: Any, field: str, minimum: Optional[int] = None) -> int:
    """
    :raises ConfigError: if value is not an integer (>= minimum).
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(field, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(field, f"must be >= {minimum}, got {value!r}")
    return value


def as_float_list(value: Any, field: str) -> list[float]:
    """
    :raises ConfigError: if value is not a list of finite numbers.
    """
    if not isinstance(value, (list, tuple)):
        raise ConfigError(field, f"expected a list of numbers, got {value!r}")
    return [as_float(x, f"{field}[{k}]") for k, x in enumerate(value)]


def as_mapping(value: Any, field: str) -> Mapping[str, Any]:
    """
    :raises ConfigError: if value is not a JSON object.
    """
    if not isinstance(value, Mapping):
        raise ConfigError(field, f"expected an object, got {type(value).__name__}")
    return value
