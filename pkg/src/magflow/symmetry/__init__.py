"""Magnetomorphisms of ellipsoids and totally magnetic submanifolds."""
from magflow.symmetry.magnetomorphisms import (
    BlockUnitary,
    killing_rotation,
    push_state,
    push_trajectory,
    random_block_unitary,
    sphere_ellipsoid_pullback_check,
    validate_magnetomorphism,
)
from magflow.symmetry.totally_magnetic import (
    SubspaceBasis,
    coordinate_subspace,
    fixed_point_membership,
    intersect_subspaces,
    parity_classify,
    subspace_invariance_test,
    totally_magnetic_criterion,
)

__all__ = [
    "BlockUnitary",
    "SubspaceBasis",
    "coordinate_subspace",
    "fixed_point_membership",
    "intersect_subspaces",
    "killing_rotation",
    "parity_classify",
    "push_state",
    "push_trajectory",
    "random_block_unitary",
    "sphere_ellipsoid_pullback_check",
    "subspace_invariance_test",
    "totally_magnetic_criterion",
    "validate_magnetomorphism",
]
