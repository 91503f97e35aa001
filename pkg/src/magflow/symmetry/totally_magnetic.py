"""
Totally magnetic submanifolds: complex subspaces of E(A) compatible with the multiplicity blocks,
fixed-point sets of coordinate reflections, and the pointwise tangent-space criterion on level sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Iterable, Optional, Sequence

import numpy as np
import scipy.linalg
from numpy import ndarray

from magflow.errors import DimensionError, PreconditionError
from magflow.integrator.base import IntegratorConfig
from magflow.integrator.rk4 import integrate
from magflow.integrator.systems import ellipsoid_system
from magflow.surfaces.base import TOL_CONSTRAINT, TOL_TANGENT, LevelSetSurface, PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec
from magflow.surfaces.magnetic import regular_gradient

TOL_SUBSPACE: float = 1e-12
"""Membership tolerance for initial data and algebraic predicates."""

TOL_CRITERION: float = 1e-10
"""Residual tolerance of the tangent-space criterion and the parity test."""

PARITIES: tuple[str, ...] = ("odd", "even")


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """
    Orthonormal basis (rows) of a complex subspace of C^n.

    :param vectors: m x n complex array with orthonormal rows.
    :raises PreconditionError: if the rows are not orthonormal.
    """

    vectors: ndarray

    GRAM_TOL: ClassVar[float] = 1e-12

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=np.complex128)
        if vecs.ndim != 2 or vecs.shape[0] == 0:
            raise DimensionError(f"Expected a non-empty m x n array of vectors, got shape {vecs.shape!r}.")
        gram = vecs.conj() @ vecs.T
        if (defect := float(np.max(np.abs(gram - np.eye(len(vecs)))))) > self.GRAM_TOL:
            raise PreconditionError(f"Basis is not orthonormal: Gram defect {defect:.3e}.")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[complex]], rank_tol: float = 1e-10) -> SubspaceBasis:
        """
        Orthonormalises spanning vectors (complex QR).

        :raises PreconditionError: if the vectors are linearly dependent.
        """
        mat = np.array([np.asarray(v, dtype=np.complex128) for v in vectors])
        if mat.ndim != 2 or mat.shape[0] == 0:
            raise DimensionError("Need at least one spanning vector.")
        q, r = np.linalg.qr(mat.T)
        if np.min(np.abs(np.diag(r))) <= rank_tol * max(1.0, float(np.max(np.abs(r)))):
            raise PreconditionError("Spanning vectors are linearly dependent.")
        return cls(q.T)

    @property
    def dim(self) -> int:
        """Complex dimension."""
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    def project(self, x: ndarray) -> ndarray:
        """Orthogonal projection of x onto the span."""
        x = np.asarray(x, dtype=np.complex128)
        return self.vectors.T @ (self.vectors.conj() @ x)

    def distance(self, x: ndarray) -> float:
        """Norm of the component of x orthogonal to the span."""
        x = np.asarray(x, dtype=np.complex128)
        return float(np.linalg.norm(x - self.project(x)))

    def is_block_compatible(self, spec: EllipsoidSpec, tol: float = TOL_SUBSPACE) -> bool:
        """True iff the span splits as V_1 + ... + V_k with V_j inside the j-th multiplicity block."""
        for block in spec.blocks:
            for vec in self.vectors:
                part = np.zeros_like(vec)
                part[block.start : block.stop] = vec[block.start : block.stop]
                if self.distance(part) > tol:
                    return False
        return True


def coordinate_subspace(n: int, indices: Iterable[int]) -> SubspaceBasis:
    """span(e_j, j in indices), 1-based."""
    idx = sorted(set(int(j) for j in indices))
    if not idx or idx[0] < 1 or idx[-1] > n:
        raise IndexError(f"Coordinate indices must be a non-empty subset of [1, {n}], got {idx!r}.")
    return SubspaceBasis(np.eye(n, dtype=np.complex128)[[j - 1 for j in idx]])


def intersect_subspaces(first: SubspaceBasis, second: SubspaceBasis, tol: float = 1e-10) -> SubspaceBasis:
    """
    Complex intersection of two spans.

    :raises PreconditionError: if the intersection is trivial.
    """
    if first.n != second.n:
        raise DimensionError(f"Subspaces live in C^{first.n} and C^{second.n}.")
    stacked = np.hstack([first.vectors.T, -second.vectors.T])
    kernel = scipy.linalg.null_space(stacked, rcond=tol)
    if kernel.shape[1] == 0:
        raise PreconditionError("Subspaces intersect trivially.")
    return SubspaceBasis.from_vectors((first.vectors.T @ kernel[: first.dim]).T)


def subspace_invariance_test(
    spec: EllipsoidSpec, basis: SubspaceBasis, st0: PhaseState, cfg: IntegratorConfig
) -> float:
    """
    Integrates the flow on E(A) and returns the largest dist(q(t), V) + dist(v(t), V) over the samples.

    :raises PreconditionError: if q0 or v0 is not in V (within 1e-12), or V is not block compatible.
    """
    if basis.n != spec.n:
        raise DimensionError(f"Subspace lives in C^{basis.n}, ellipsoid in C^{spec.n}.")
    if not basis.is_block_compatible(spec):
        raise PreconditionError(f"Subspace does not split along the multiplicity blocks {spec.block_sizes!r}.")
    for name, vec in (("q0", st0.q), ("v0", st0.v)):
        if (dist := basis.distance(vec)) > TOL_SUBSPACE:
            raise PreconditionError(f"Initial {name} is not in the subspace: distance {dist:.3e}.")
    traj = integrate(ellipsoid_system(spec), st0, cfg)
    return max(basis.distance(st.q) + basis.distance(st.v) for st in traj.states)


def fixed_point_membership(
    spec: EllipsoidSpec, J: Iterable[int], q: ndarray, tol: float = TOL_CONSTRAINT
) -> bool:
    """True iff q lies on E(A) (within tol) and q_j = 0 (within 1e-12) for every j in J (1-based)."""
    q = np.asarray(q, dtype=np.complex128)
    if abs(spec.f_value(q) - 1.0) > tol:
        return False
    return all(abs(q[j - 1]) <= TOL_SUBSPACE for j in J)


def _real_span(basis: Sequence[Sequence[complex]]) -> ndarray:
    return np.column_stack([np.asarray(b, dtype=np.complex128).view(np.float64) for b in basis])


def _span_residual(orth: ndarray, vec: ndarray) -> float:
    real = np.asarray(vec, dtype=np.complex128).view(np.float64)
    return float(np.linalg.norm(real - orth @ (orth.T @ real)))


def _tangent_real_basis(s: LevelSetSurface, x: ndarray, basis: Sequence[Sequence[complex]]) -> ndarray:
    vecs = [np.asarray(b, dtype=np.complex128) for b in basis]
    if not vecs:
        raise PreconditionError("Tangent basis is empty.")
    g, gg = regular_gradient(s, x)
    for vec in vecs:
        if abs(float(np.vdot(vec, g).real)) > TOL_TANGENT * float(np.linalg.norm(vec)) * np.sqrt(gg):
            raise PreconditionError("Basis vector is not tangent to the surface.")
    real = _real_span(vecs)
    if np.linalg.matrix_rank(real) < len(vecs):
        raise PreconditionError("Basis vectors are not linearly independent over R.")
    return scipy.linalg.orth(real)


def totally_magnetic_criterion(s: LevelSetSurface, x: ndarray, basis: Sequence[Sequence[complex]]) -> bool:
    """
    Pointwise test for T_x S to be the tangent space of a totally magnetic submanifold: for every
    basis vector v the tangential part of i v lies in the real span of the basis.

    :param basis: real-linearly independent vectors tangent to the surface at x.
    :raises PreconditionError: on a degenerate or non-tangent basis.
    """
    x = np.asarray(x, dtype=np.complex128)
    orth = _tangent_real_basis(s, x, basis)
    g, gg = regular_gradient(s, x)
    for vec in basis:
        iv = 1j * np.asarray(vec, dtype=np.complex128)
        tangential = iv - (np.vdot(g, iv).real / gg) * g
        if _span_residual(orth, tangential) > TOL_CRITERION:
            return False
    return True


def parity_classify(
    s: LevelSetSurface, x: ndarray, basis: Sequence[Sequence[complex]], expected: Optional[str] = None
) -> str:
    """
    "odd" iff i grad f(x) is tangent to S, else "even". Cross-checks: odd spans have odd real
    dimension and even spans are complex (closed under i).

    :param expected: (optional) declared parity; a mismatch is an error.
    :raises PreconditionError: if the criterion fails, a cross-check fails or expected disagrees.
    """
    if expected is not None and expected not in PARITIES:
        raise ValueError(f"expected must be one of {PARITIES!r}, got {expected!r}.")
    x = np.asarray(x, dtype=np.complex128)
    if not totally_magnetic_criterion(s, x, basis):
        raise PreconditionError("Span does not satisfy the totally magnetic criterion.")
    orth = _tangent_real_basis(s, x, basis)
    g, gg = regular_gradient(s, x)
    parity = "odd" if _span_residual(orth, 1j * g) <= TOL_CRITERION * np.sqrt(gg) else "even"
    if parity == "odd" and len(basis) % 2 == 0:
        raise PreconditionError(f"i grad f is tangent but the span has even dimension {len(basis)}.")
    if parity == "even":
        vecs = [np.asarray(b, dtype=np.complex128) for b in basis]
        scale = max(float(np.linalg.norm(vec)) for vec in vecs)
        if any(_span_residual(orth, 1j * vec) > TOL_CRITERION * scale for vec in vecs):
            raise PreconditionError("Even-dimensional span is not closed under multiplication by i.")
    if expected is not None and expected != parity:
        raise PreconditionError(f"Declared parity {expected!r} contradicts the computed parity {parity!r}.")
    return parity
