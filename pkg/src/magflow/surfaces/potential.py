"""Potentials invariant under the diagonal torus action z_j -> e^{i phi_j} z_j."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy import ndarray

from magflow.surfaces.base import PhaseState


@dataclass(frozen=True)
class PhaseInvariantPotential:
    """
    V(z) = 1/2 sum_j k_j |z_j|^2. Depends on the moduli |z_j| only, so every momentum F_j stays
    an integral of motion; the energy becomes E_V = 1/2 |v|^2 + V(q).
    """

    stiffness: tuple[float, ...]

    def __post_init__(self):
        k = tuple(float(x) for x in self.stiffness)
        if not all(np.isfinite(k)):
            raise ValueError(f"Potential stiffness must be finite, got {k!r}.")
        object.__setattr__(self, "stiffness", k)

    @classmethod
    def quadratic(cls, stiffness: Sequence[float]) -> PhaseInvariantPotential:
        return cls(tuple(stiffness))

    @property
    def _k(self) -> ndarray:
        return np.asarray(self.stiffness, dtype=np.float64)

    def value(self, q: ndarray) -> float:
        return 0.5 * float(np.sum(self._k * np.abs(q) ** 2))

    def grad(self, q: ndarray) -> ndarray:
        return self._k * q


def potential_energy(potential: PhaseInvariantPotential | None, st: PhaseState) -> float:
    return 0.0 if potential is None else potential.value(st.q)


def total_energy(potential: PhaseInvariantPotential | None, st: PhaseState) -> float:
    """E_V = 1/2 |v|^2 + V(q)."""
    return 0.5 * float(np.vdot(st.v, st.v).real) + potential_energy(potential, st)
