"""
Linear magnetomorphisms of E(A): the block unitary group U(l_1) x ... x U(l_k) over the
multiplicity blocks of A, acting on positions and velocities alike.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Optional, Sequence

import numpy as np
import scipy.stats
from numpy import ndarray

from magflow.errors import DimensionError, PreconditionError
from magflow.geometry.checks import ensure_square_matrix
from magflow.geometry.complex_geometry import alpha, as_complex, herm_inner, real_inner
from magflow.integrator.base import SecondOrderSystem, Trajectory, diagnostics_frame
from magflow.surfaces.base import TOL_CONSTRAINT, TOL_TANGENT, PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec

TOL_UNITARY: float = 1e-12
"""Tolerance on ||U*U - I||_max and on entries outside the diagonal blocks."""


def _block_mask(block_sizes: Sequence[int]) -> ndarray:
    n = int(sum(block_sizes))
    mask = np.zeros((n, n), dtype=bool)
    start = 0
    for size in block_sizes:
        mask[start : start + size, start : start + size] = True
        start += size
    return mask


def _unitarity_defect(mat: ndarray) -> float:
    return float(np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))))


def _off_block_defect(mat: ndarray, block_sizes: Sequence[int]) -> float:
    off = np.abs(mat[~_block_mask(block_sizes)])
    return float(off.max()) if off.size else 0.0


def validate_magnetomorphism(spec: EllipsoidSpec, mat: ndarray, tol: float = TOL_UNITARY) -> bool:
    """
    True iff mat is unitary and block-diagonal with respect to the multiplicity blocks of spec.

    :raises DimensionError: if mat is not an n x n matrix.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    ensure_square_matrix(mat, spec.n)
    return _unitarity_defect(mat) <= tol and _off_block_defect(mat, spec.block_sizes) <= tol


@dataclass(frozen=True, eq=False)
class BlockUnitary:
    """
    An element of U(l_1) x ... x U(l_k).

    :param matrix: n x n complex matrix.
    :param block_sizes: multiplicities l_1, ..., l_k (from an EllipsoidSpec).
    :raises PreconditionError: if the matrix is not unitary or not block-diagonal.
    """

    matrix: ndarray
    block_sizes: tuple[int, ...]

    TOL: ClassVar[float] = TOL_UNITARY

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        sizes = tuple(int(s) for s in self.block_sizes)
        ensure_square_matrix(mat, sum(sizes))
        if (defect := _unitarity_defect(mat)) > self.TOL:
            raise PreconditionError(f"Matrix is not unitary: ||U*U - I||_max = {defect:.3e}.")
        if (defect := _off_block_defect(mat, sizes)) > self.TOL:
            raise PreconditionError(
                f"Matrix mixes multiplicity blocks {sizes!r}: off-block entry {defect:.3e}."
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "block_sizes", sizes)

    @classmethod
    def for_spec(cls, spec: EllipsoidSpec, mat: ndarray) -> BlockUnitary:
        return cls(mat, spec.block_sizes)

    @classmethod
    def identity(cls, spec: EllipsoidSpec) -> BlockUnitary:
        return cls(np.eye(spec.n, dtype=np.complex128), spec.block_sizes)

    @classmethod
    def diagonal_phases(cls, spec: EllipsoidSpec, phis: Sequence[float]) -> BlockUnitary:
        """diag(e^{i phi_1}, ..., e^{i phi_n}), a magnetomorphism for every A."""
        phis = np.asarray(phis, dtype=np.float64)
        if phis.shape != (spec.n,):
            raise DimensionError(f"Expected {spec.n} phases, got shape {phis.shape!r}.")
        return cls(np.diag(np.exp(1j * phis)), spec.block_sizes)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, z: ndarray) -> ndarray:
        return self.matrix @ as_complex(z)

    def compose(self, other: BlockUnitary) -> BlockUnitary:
        if other.block_sizes != self.block_sizes:
            raise DimensionError(f"Block structures differ: {self.block_sizes!r} vs {other.block_sizes!r}.")
        return BlockUnitary(self.matrix @ other.matrix, self.block_sizes)


def push_state(u: BlockUnitary, st: PhaseState) -> PhaseState:
    """(q, v) -> (U q, U v)."""
    return PhaseState(u.matrix @ st.q, u.matrix @ st.v)


def push_trajectory(u: BlockUnitary, traj: Trajectory, sys: Optional[SecondOrderSystem] = None) -> Trajectory:
    """
    Pushes every sample of a trajectory. If sys is given the pushed samples are re-diagnosed,
    otherwise the original diagnostics are kept.
    """
    states = tuple(push_state(u, st) for st in traj.states)
    if sys is None:
        return Trajectory(traj.times, states, traj.diagnostics.copy())
    rows = [sys.diagnose(st) for st in states]
    return Trajectory(traj.times, states, diagnostics_frame(rows, sys.diagnostic_names))


def killing_rotation(spec: EllipsoidSpec, t: float) -> BlockUnitary:
    """Time-t flow of the vector field X_z = 1/2 i z, i.e. z -> e^{it/2} z; an isometry of every E(A)."""
    return BlockUnitary(np.exp(0.5j * t) * np.eye(spec.n, dtype=np.complex128), spec.block_sizes)


def random_block_unitary(spec: EllipsoidSpec, rng: np.random.Generator) -> BlockUnitary:
    """Haar-distributed element of U(l_1) x ... x U(l_k)."""
    mat = np.zeros((spec.n, spec.n), dtype=np.complex128)
    for block in spec.blocks:
        size = len(block)
        if size == 1:
            piece = np.array([[np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))]])
        else:
            piece = scipy.stats.unitary_group.rvs(size, random_state=rng)
        mat[block.start : block.stop, block.start : block.stop] = piece
    return BlockUnitary(mat, spec.block_sizes)


def sphere_ellipsoid_pullback_check(
    spec: EllipsoidSpec,
    z: ndarray,
    v: ndarray,
    w: ndarray,
    tol_constraint: float = TOL_CONSTRAINT,
    tol_tangent: float = TOL_TANGENT,
) -> tuple[float, float]:
    """
    Residuals of F_A^* g = g_A and F_A^* alpha = alpha_A for F_A(z) = sqrt(A) z at a unit-sphere point:

        |<sqrt(A) v, sqrt(A) w>_R - Re<A v, w>|,   |alpha(sqrt(A) z, sqrt(A) v) - 1/2 Im<A z, v>|.

    :param tol_constraint: (optional) accepted deviation of |z| from 1.
    :param tol_tangent: (optional) accepted |Re<z, v>| relative to max(1, |v|), likewise for w.
    :raises PreconditionError: if z is off the unit sphere or v, w are not tangent to it at z.
    """
    z, v, w = as_complex(z), as_complex(v), as_complex(w)
    if abs(float(np.linalg.norm(z)) - 1.0) > tol_constraint:
        raise PreconditionError(f"z must lie on the unit sphere, got |z| = {np.linalg.norm(z)!r}.")
    for name, vec in (("v", v), ("w", w)):
        if abs(real_inner(z, vec)) > tol_tangent * max(1.0, float(np.linalg.norm(vec))):
            raise PreconditionError(f"{name} is not tangent to the unit sphere at z.")
    root_a, a = np.sqrt(spec.a_array), spec.a_array
    metric = abs(real_inner(root_a * v, root_a * w) - herm_inner(a * v, w).real)
    form = abs(alpha(root_a * z, root_a * v) - 0.5 * herm_inner(a * z, v).imag)
    return metric, form
