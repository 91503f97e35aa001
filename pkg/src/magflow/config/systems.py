"""
Add system configurations here by extending SystemConfig and registering the class in SYSTEM_CONFIGS.
"""
from __future__ import annotations

from functools import cached_property
from typing import Any, ClassVar, Mapping, Optional, Sequence

import numpy as np
import scipy.optimize

from magflow.config.base import (
    SystemConfig,
    as_float,
    as_float_list,
    as_int,
    as_mapping,
    require,
)
from magflow.errors import ConfigError
from magflow.integrator.base import SecondOrderSystem
from magflow.integrator.rk4 import project_to_surface
from magflow.integrator.systems import ellipsoid_system, surface_system
from magflow.revolution import REVOLUTION_DIAGNOSTICS, RevolutionSurface, RevState, revolution_system
from magflow.surfaces.base import LevelSetSurface, PhaseState
from magflow.surfaces.custom import CUSTOM_SURFACES
from magflow.surfaces.ellipsoid import EllipsoidSpec
from magflow.surfaces.magnetic import tangent_project
from magflow.surfaces.potential import PhaseInvariantPotential


def _random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _random_unit_tangent(s: LevelSetSurface, q: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    v = tangent_project(s, q, _random_complex(rng, s.dim_n))
    return v / np.linalg.norm(v)


class EllipsoidSystemConfig(SystemConfig):

    TYPE: ClassVar[str] = "ellipsoid"

    def __init__(
        self, spec: EllipsoidSpec, potential: Optional[PhaseInvariantPotential] = None, name: str = ""
    ):
        """
        Magnetic geodesics on E(A), optionally with a phase-invariant potential.

        :param spec: ellipsoid data.
        :param potential: (optional) potential V = 1/2 sum_j k_j |z_j|^2.
        :param name: (optional) display name (defaults to the surface name).
        """
        self.spec: EllipsoidSpec = spec
        self.potential: Optional[PhaseInvariantPotential] = potential
        super().__init__(name=name or f"ellipsoid{list(spec.a)!r}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], n_hint: Optional[int] = None) -> EllipsoidSystemConfig:
        field = cls.FIELD
        a = as_float_list(require(data, "a", field), f"{field}.a")
        try:
            spec = EllipsoidSpec(tuple(a))
        except ValueError as err:
            raise ConfigError(f"{field}.a", str(err)) from err
        return cls(spec, potential=_parse_potential(data, spec.n))

    @cached_property
    def system(self) -> SecondOrderSystem:
        return ellipsoid_system(self.spec, self.potential, name=self.name)

    @property
    def n_real(self) -> int:
        return 2 * self.spec.n

    @property
    def ellipsoid(self) -> Optional[EllipsoidSpec]:
        return self.spec

    @property
    def conserved(self) -> tuple[str, ...]:
        return ("energy", "C", *(f"F_{j}" for j in range(1, self.spec.n + 1)))

    def random_state(self, rng: np.random.Generator) -> PhaseState:
        """Uniform direction scaled onto E(A), with a random unit-speed tangent velocity."""
        q = _random_complex(rng, self.spec.n)
        q = q / np.sqrt(self.spec.f_value(q))
        return PhaseState(q, _random_unit_tangent(self.surface, q, rng))


class SphereSystemConfig(EllipsoidSystemConfig):

    TYPE: ClassVar[str] = "sphere"

    def __init__(self, n: int, radius: float = 1.0, potential: Optional[PhaseInvariantPotential] = None):
        """
        The round sphere of the given radius in C^n (encoded as a_j = radius^2).

        :param n: complex dimension.
        :param radius: (optional) sphere radius (default = 1).
        """
        self.radius: float = radius
        super().__init__(
            EllipsoidSpec.sphere(n, radius), potential=potential, name=f"sphere(r={radius:g}, n={n})"
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], n_hint: Optional[int] = None) -> SphereSystemConfig:
        field = cls.FIELD
        radius = as_float(require(data, "radius", field), f"{field}.radius")
        if not radius > 0:
            raise ConfigError(f"{field}.radius", f"must be > 0, got {radius!r}")
        if "n" in data:
            n = as_int(data["n"], f"{field}.n", minimum=1)
        elif n_hint is not None:
            n = n_hint
        else:
            raise ConfigError(f"{field}.n", "missing; give n or an initial state to infer it from")
        return cls(n, radius, potential=_parse_potential(data, n))


class CustomSystemConfig(SystemConfig):

    TYPE: ClassVar[str] = "custom"

    def __init__(self, surface: LevelSetSurface):
        """
        A named level-set surface from CUSTOM_SURFACES.

        :param surface: the surface with explicit derivatives.
        """
        self._surface: LevelSetSurface = surface
        super().__init__(name=surface.name)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], n_hint: Optional[int] = None) -> CustomSystemConfig:
        field = cls.FIELD
        name = require(data, "surface", field)
        if name not in CUSTOM_SURFACES:
            known = sorted(CUSTOM_SURFACES)
            raise ConfigError(f"{field}.surface", f"unknown surface {name!r}; known: {known!r}")
        level = as_float(data.get("level", 1.0), f"{field}.level")
        if not level > 0:
            raise ConfigError(f"{field}.level", f"must be > 0, got {level!r}")
        return cls(CUSTOM_SURFACES[name](level=level))

    @cached_property
    def system(self) -> SecondOrderSystem:
        return surface_system(self._surface, name=self.name)

    @property
    def n_real(self) -> int:
        return 2 * self._surface.dim_n

    @property
    def conserved(self) -> tuple[str, ...]:
        return ("energy",)

    def random_state(self, rng: np.random.Generator) -> PhaseState:
        """Random direction scaled radially onto the level set (the shipped surfaces are star-shaped)."""
        s = self._surface
        direction = _random_complex(rng, s.dim_n)
        upper = 1.0
        while s.residual(upper * direction) < 0:
            upper *= 2.0
        t = scipy.optimize.brentq(lambda x: s.residual(x * direction), 0.0, upper, xtol=1e-14)
        st = project_to_surface(s, t * direction, np.zeros(s.dim_n))
        return PhaseState(st.q, _random_unit_tangent(s, st.q, rng))


class RevolutionSystemConfig(SystemConfig):

    TYPE: ClassVar[str] = "revolution"
    PROFILES: ClassVar[tuple[str, ...]] = ("torus", "table")

    def __init__(self, surface: RevolutionSurface):
        """
        Surface of revolution in (r, theta) coordinates.

        :param surface: profile and magnetic potential.
        """
        self.rev_surface: RevolutionSurface = surface
        super().__init__(name=surface.name)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], n_hint: Optional[int] = None) -> RevolutionSystemConfig:
        field = cls.FIELD
        profile = require(data, "profile", field)
        if profile == "torus":
            magnetic = data.get("magnetic", True)
            if not isinstance(magnetic, bool):
                raise ConfigError(f"{field}.magnetic", f"expected true/false, got {magnetic!r}")
            return cls(RevolutionSurface.torus_profile(magnetic=magnetic))
        if profile == "table":
            table = as_mapping(require(data, "table", field), f"{field}.table")
            cols = {
                key: as_float_list(require(table, key, f"{field}.table"), f"{field}.table.{key}")
                for key in ("r", "f", "df", "a", "da")
            }
            try:
                return cls(RevolutionSurface.from_table(**cols))
            except ValueError as err:
                raise ConfigError(f"{field}.table", str(err)) from err
        raise ConfigError(f"{field}.profile", f"expected one of {cls.PROFILES!r}, got {profile!r}")

    @cached_property
    def system(self) -> SecondOrderSystem:
        return revolution_system(self.rev_surface)

    @property
    def n_real(self) -> int:
        return 2

    @property
    def conserved(self) -> tuple[str, ...]:
        return REVOLUTION_DIAGNOSTICS

    def make_state(self, q: Sequence[float], v: Sequence[float], field: str = "initial") -> PhaseState:
        for key, values in (("q", q), ("v", v)):
            if len(values) != 2:
                raise ConfigError(f"{field}.{key}", f"expected 2 reals (r, theta), got {len(values)}")
        lo, hi = self.rev_surface.r_domain
        if not lo < q[0] < hi:
            raise ConfigError(f"{field}.q", f"r = {q[0]!r} outside the profile domain ({lo!r}, {hi!r})")
        return RevState(q[0], q[1], v[0], v[1]).to_phase_state()

    def random_state(self, rng: np.random.Generator) -> PhaseState:
        lo, hi = self.rev_surface.r_domain
        lo, hi = max(lo, -np.pi), min(hi, np.pi)
        margin = 0.1 * (hi - lo)
        r = rng.uniform(lo + margin, hi - margin)
        return RevState(r, rng.uniform(0.0, 2.0 * np.pi), rng.normal(), rng.normal()).to_phase_state()


def _parse_potential(data: Mapping[str, Any], n: int) -> Optional[PhaseInvariantPotential]:
    if "potential" not in data:
        return None
    field = f"{SystemConfig.FIELD}.potential"
    section = as_mapping(data["potential"], field)
    stiffness = as_float_list(require(section, "stiffness", field), f"{field}.stiffness")
    if len(stiffness) != n:
        raise ConfigError(f"{field}.stiffness", f"expected {n} entries, got {len(stiffness)}")
    return PhaseInvariantPotential.quadratic(stiffness)


SYSTEM_CONFIGS: dict[str, type[SystemConfig]] = {
    cfg.TYPE: cfg
    for cfg in (EllipsoidSystemConfig, SphereSystemConfig, CustomSystemConfig, RevolutionSystemConfig)
}


def parse_system(data: Any, n_hint: Optional[int] = None) -> SystemConfig:
    """
    Dispatches on the "type" key of a system section.

    :raises ConfigError: on an unknown type or an invalid section.
    """
    field = SystemConfig.FIELD
    data = as_mapping(data, field)
    kind = require(data, "type", field)
    if kind not in SYSTEM_CONFIGS:
        raise ConfigError(f"{field}.type", f"expected one of {sorted(SYSTEM_CONFIGS)!r}, got {kind!r}")
    return SYSTEM_CONFIGS[kind].from_dict(data, n_hint=n_hint)
