"""
Complex and real linear algebra on C^n = R^2n.

Conventions (relied upon by every other module):

* The Hermitian product is conjugate-linear in the first slot: <z, w> = sum_k conj(z_k) w_k.
  Then Re<iz, v> = Im<z, v>, and the primitive is alpha_z(v) = 1/2 Im<z, v>.
* Vectors are stored as complex128 arrays. The real view is the interleaved layout
  (Re z_1, Im z_1, Re z_2, Im z_2, ...), obtained without copying through ndarray.view.
  This interleaving is also the column order of every CSV file written by magflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TypeAlias

import numpy as np
from numpy import ndarray

from magflow.errors import DimensionError
from magflow.geometry.checks import ensure_finite, ensure_same_length

VectorLike: TypeAlias = "ComplexVector | ndarray | Sequence[complex]"


@dataclass(frozen=True, eq=False)
class ComplexVector:
    """A point or velocity in C^n, stored as n complex numbers (2n interleaved reals)."""

    entries: ndarray

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=np.complex128)
        if entries.ndim != 1 or entries.size == 0:
            raise DimensionError(f"A ComplexVector needs n >= 1 complex entries, got shape {entries.shape!r}.")
        ensure_finite(entries, what="ComplexVector entry")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_real(cls, reals: Sequence[float] | ndarray) -> ComplexVector:
        """Builds a vector from 2n interleaved reals (re_1, im_1, re_2, im_2, ...)."""
        arr = np.ascontiguousarray(reals, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0 or arr.size % 2:
            raise DimensionError(f"Expected an even, positive number of reals, got shape {arr.shape!r}.")
        return cls(arr.view(np.complex128))

    @classmethod
    def basis(cls, n: int, k: int) -> ComplexVector:
        """Standard basis vector e_k of C^n (k is 1-based)."""
        if not 1 <= k <= n:
            raise IndexError(f"Basis index {k} out of range 1..{n}.")
        entries = np.zeros(n, dtype=np.complex128)
        entries[k - 1] = 1.0
        return cls(entries)

    @property
    def n(self) -> int:
        return int(self.entries.size)

    @property
    def real_view(self) -> ndarray:
        """Zero-copy interleaved real view of length 2n."""
        return self.entries.view(np.float64)

    def __array__(self, dtype=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ComplexVector):
            return bool(np.array_equal(self.entries, other.entries))
        return NotImplemented

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.entries.tolist()!r})"


def as_complex(v: VectorLike) -> ndarray:
    """Returns the complex128 entry array of v (no copy for ComplexVector / complex arrays)."""
    if isinstance(v, ComplexVector):
        return v.entries
    return np.asarray(v, dtype=np.complex128)


def herm_inner(z: VectorLike, w: VectorLike) -> complex:
    """
    Hermitian product sum_k conj(z_k) w_k, conjugate-linear in the first argument.

    :raises DimensionError: on a dimension mismatch.
    """
    z_, w_ = as_complex(z), as_complex(w)
    ensure_same_length(z_, w_)
    return complex(np.vdot(z_, w_))


def real_inner(v: VectorLike, w: VectorLike) -> float:
    """Euclidean inner product of R^2n, i.e. Re<v, w>."""
    v_, w_ = as_complex(v), as_complex(w)
    ensure_same_length(v_, w_)
    return float(np.vdot(v_, w_).real)


def jmul(v: VectorLike) -> ndarray:
    """Multiplication by the imaginary unit (the Lorentz force of the ambient system)."""
    return 1j * as_complex(v)


def alpha(z: VectorLike, v: VectorLike) -> float:
    """
    The primitive alpha_z(v) = 1/2 Im<z, v> of the ambient magnetic form.

    :raises DimensionError: on a dimension mismatch.
    """
    return 0.5 * herm_inner(z, v).imag
