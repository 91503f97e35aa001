"""
Conserved quantities of the magnetic geodesic flow on E(A): energy, the torus moment maps F_j,
the contact constant C and identities relating them.
"""
from __future__ import annotations

from typing import Optional

import numpy as np
import scipy.linalg
from numpy import ndarray

from magflow.geometry.complex_geometry import jmul, real_inner
from magflow.surfaces.base import PhaseState
from magflow.surfaces.ellipsoid import EllipsoidSpec, ellipsoid_c, ellipsoid_surface
from magflow.surfaces.potential import PhaseInvariantPotential


def energy(st: PhaseState) -> float:
    """E = 1/2 |v|^2."""
    return 0.5 * float(np.vdot(st.v, st.v).real)


def _check_index(spec: EllipsoidSpec, j: int) -> int:
    if not 1 <= j <= spec.n:
        raise IndexError(f"Coordinate index j must be in [1, {spec.n}], got {j!r}.")
    return j - 1


def moment_maps(spec: EllipsoidSpec, st: PhaseState) -> ndarray:
    """All F_j at once: F_j = <v_j, i q_j>_R - 1/2 |q_j|^2."""
    if st.dim != spec.n:
        raise IndexError(f"State has dimension {st.dim}, ellipsoid has n = {spec.n}.")
    q, v = st.q, st.v
    return (np.conj(v) * 1j * q).real - 0.5 * (q.real**2 + q.imag**2)


def moment_map_F(spec: EllipsoidSpec, st: PhaseState, j: int) -> float:
    """
    Momentum of the circle action rotating the j-th coordinate (1-based):
    F_j = g(v, X_j) - alpha(X_j) with (X_j)_z = i z_j e_j.

    :raises IndexError: if j is not in [1, n].
    """
    k = _check_index(spec, j)
    q, v = st.q[k], st.v[k]
    return float((np.conj(v) * 1j * q).real - 0.5 * abs(q) ** 2)


def c_identity_residual(spec: EllipsoidSpec, st: PhaseState) -> float:
    """
    C - (1/2 + sum_j F_j / a_j). Vanishes identically on E(A); for f(q) = 1 + delta it
    equals delta / 2.
    """
    return ellipsoid_c(spec, st) - (0.5 + float(np.sum(moment_maps(spec, st) / spec.a_array)))


def contact_pairing(st: PhaseState) -> float:
    """g(X, v) with X_q = 1/2 i q, the metric dual of the contact form on the round sphere."""
    return real_inner(0.5 * jmul(st.q), st.v)


def rotate_coordinate(st: PhaseState, k: int, phi: float) -> PhaseState:
    """Multiplies the k-th (1-based) coordinate of q and v by e^{i phi}."""
    factor = np.ones(st.dim, dtype=np.complex128)
    factor[k - 1] = np.exp(1j * phi)
    return PhaseState(factor * st.q, factor * st.v)


def torus_equivariance_check(spec: EllipsoidSpec, st: PhaseState, j: int, k: int, phi: float) -> float:
    """|F_j(R_k(phi) st) - F_j(st)|, where R_k is the lifted rotation of coordinate k."""
    _check_index(spec, k)
    return abs(moment_map_F(spec, rotate_coordinate(st, k, phi), j) - moment_map_F(spec, st, j))


def integrals_independence_rank(
    spec: EllipsoidSpec,
    st: PhaseState,
    potential: Optional[PhaseInvariantPotential] = None,
    tol: Optional[float] = None,
) -> int:
    """
    Rank of the differentials of (E, F_1, ..., F_n) restricted to the tangent space of T E(A)
    at (q, v). Equal to n + 1 at generic states; drops wherever some (q_j, v_j) vanishes.

    :param potential: (optional) use E_V = E + V instead of E.
    :param tol: (optional) singular value cutoff passed to numpy.linalg.matrix_rank.
    """
    s = ellipsoid_surface(spec)
    q, v, n = st.q, st.v, st.dim
    g = s.grad(q)
    hv = s.hess_apply(q, v)

    def packed(dq: ndarray, dv: ndarray) -> ndarray:
        dq, dv = np.asarray(dq, dtype=np.complex128), np.asarray(dv, dtype=np.complex128)
        return np.concatenate([dq.view(np.float64), dv.view(np.float64)])

    # tangent space of T Sigma: kernel of d(f) and d(<v, grad f>)
    constraints = np.vstack([packed(g, np.zeros(n)), packed(hv, g)])
    tangent = scipy.linalg.null_space(constraints)

    de_q = np.zeros(n, dtype=np.complex128) if potential is None else potential.grad(q)
    rows = [packed(de_q, v)]
    for k in range(n):
        dq, dv = np.zeros(n, dtype=np.complex128), np.zeros(n, dtype=np.complex128)
        dq[k] = -(q[k] + 1j * v[k])
        dv[k] = 1j * q[k]
        rows.append(packed(dq, dv))
    return int(np.linalg.matrix_rank(np.vstack(rows) @ tangent, tol=tol))
