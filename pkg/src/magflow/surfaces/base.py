"""
Baseclasses for level-set hypersurfaces Sigma = f^{-1}(c) in C^n = R^2n and for phase-space states.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, ClassVar, Optional, Sequence

import numpy as np
from numpy import ndarray

from magflow.geometry.complex_geometry import ComplexVector, VectorLike, as_complex, real_inner
from magflow.geometry.checks import ensure_finite, ensure_same_length

ScalarField = Callable[[ndarray], float]
VectorField = Callable[[ndarray], ndarray]
HessianAction = Callable[[ndarray, ndarray], ndarray]

EPS_REG: float = 1e-10
"""Gradient norms at or below this value are treated as singular points of f."""

TOL_CONSTRAINT: float = 1e-9
"""Default tolerance on |f(q) - c| for a state to count as lying on the surface."""

TOL_TANGENT: float = 1e-9
"""Default relative tolerance on <v, grad f(q)> for a velocity to count as tangent."""


@dataclass(frozen=True, eq=False)
class PhaseState:
    """
    A position q and velocity v. For hypersurfaces both are complex arrays of length n;
    for intrinsic coordinate systems (surfaces of revolution) they are real arrays.
    """

    q: ndarray
    v: ndarray

    def __post_init__(self):
        q, v = np.array(self.q), np.array(self.v)
        if not np.iscomplexobj(q) and not np.iscomplexobj(v):
            q, v = q.astype(np.float64), v.astype(np.float64)
        else:
            q, v = q.astype(np.complex128), v.astype(np.complex128)
        ensure_same_length(q, v, what="position and velocity")
        q.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_vectors(cls, q: VectorLike, v: VectorLike) -> PhaseState:
        return cls(as_complex(q), as_complex(v))

    @classmethod
    def from_reals(cls, q_reals: Sequence[float], v_reals: Sequence[float]) -> PhaseState:
        """Builds a complex state from interleaved real coordinates (2n reals each)."""
        return cls(ComplexVector.from_real(q_reals).entries, ComplexVector.from_real(v_reals).entries)

    @property
    def dim(self) -> int:
        return int(self.q.size)

    @property
    def speed(self) -> float:
        """kappa := |v| (Euclidean norm)."""
        return float(np.linalg.norm(self.v))

    def real_q(self) -> ndarray:
        return self.q.view(np.float64) if np.iscomplexobj(self.q) else self.q

    def real_v(self) -> ndarray:
        return self.v.view(np.float64) if np.iscomplexobj(self.v) else self.v

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.v)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(q={self.q.tolist()!r}, v={self.v.tolist()!r})"


@dataclass(frozen=True, eq=False)
class LevelSetSurface:
    """
    A regular level set Sigma = f^{-1}(level) of f: C^n = R^2n -> R.

    Callables take and return complex arrays of length dim_n. The gradient is the R^2n gradient
    packed as d f/d x_k + i d f/d y_k; hess_apply(x, v) returns Hess_x(f) v in the same packing.
    """

    f: ScalarField
    grad: VectorField
    hess_apply: HessianAction
    level: float
    dim_n: int
    name: str = "custom"
    finite_difference: bool = False
    """True if grad/hess_apply are central-difference approximations (prototyping only)."""
    hessian_commutes_with_i: bool = False
    """True if Hess f commutes with multiplication by i (then <v, i grad f> is conserved)."""

    FD_REL_STEP: ClassVar[float] = 1e-5

    def residual(self, x: ndarray) -> float:
        """Signed constraint residual f(x) - level."""
        return float(self.f(x)) - self.level

    def check_gradient(self, x: ndarray, v: ndarray, delta: float = 1e-5) -> float:
        """
        Finite-difference consistency of grad with f along v:
        |(f(x + delta v) - f(x - delta v)) / (2 delta) - <grad(x), v>|, which is O(delta^2).
        """
        fd = (self.f(x + delta * v) - self.f(x - delta * v)) / (2.0 * delta)
        return abs(float(fd) - real_inner(self.grad(x), v))

    @classmethod
    def from_function(
        cls,
        f: ScalarField,
        level: float,
        dim_n: int,
        grad: Optional[VectorField] = None,
        hess_apply: Optional[HessianAction] = None,
        name: str = "custom",
    ) -> LevelSetSurface:
        """
        Builds a surface from f, filling in missing derivatives with central differences
        (step delta = 1e-5 * (1 + |x|)). Surfaces built with the fallback are flagged
        via `finite_difference` and are not meant for acceptance runs.
        """
        uses_fd = grad is None or hess_apply is None
        grad_ = grad if grad is not None else _fd_gradient(f, cls.FD_REL_STEP)
        hess_ = hess_apply if hess_apply is not None else _fd_hessian_action(grad_, cls.FD_REL_STEP)
        return cls(
            f=f, grad=grad_, hess_apply=hess_, level=level, dim_n=dim_n, name=name, finite_difference=uses_fd
        )


def _fd_gradient(f: ScalarField, rel_step: float) -> VectorField:
    def grad(x: ndarray) -> ndarray:
        x = np.asarray(x, dtype=np.complex128)
        delta = rel_step * (1.0 + float(np.linalg.norm(x)))
        out = np.zeros_like(x)
        for k in range(x.size):
            for unit in (1.0, 1j):
                step = np.zeros_like(x)
                step[k] = unit * delta
                out[k] += unit * (f(x + step) - f(x - step)) / (2.0 * delta)
        ensure_finite(out, what="finite-difference gradient")
        return out

    return grad


def _fd_hessian_action(grad: VectorField, rel_step: float) -> HessianAction:
    def hess_apply(x: ndarray, v: ndarray) -> ndarray:
        x, v = np.asarray(x, dtype=np.complex128), np.asarray(v, dtype=np.complex128)
        vnorm = float(np.linalg.norm(v))
        if vnorm == 0.0:
            return np.zeros_like(x)
        delta = rel_step * (1.0 + float(np.linalg.norm(x))) / vnorm
        return (grad(x + delta * v) - grad(x - delta * v)) / (2.0 * delta)

    return hess_apply
