"""Exact constructions and verification of permutation-set identities for
left-normed Lie brackets."""

from .exactla import (
    GF2Matrix,
    IntegerLattice,
    IntMatrix,
    bracket_map_matrix,
    bracket_map_matrix_gf2,
    gf2_nullspace,
    gf2_rank,
    gf2_solve,
    int_kernel_basis,
    int_rank,
    lattice_membership,
)
from .freealg import (
    MultilinearPoly,
    bracket_image,
    bracket_of_two_blocks,
    expand_bracket_recursive,
    expand_bracket_shuffle,
    kernel_probe,
    monomial,
    reduce_mod2,
    sum_of_set,
)
from .jacobi import (
    BasisElement,
    CoverResult,
    NotTwoJacobiError,
    Report,
    closure_property_suite,
    count_jacobi_mod2,
    decompose_mod2,
    enumerate_jacobi,
    find_disjoint_cover,
    is_jacobi,
    is_jacobi_mod2,
    kernel_set_basis,
    verify_kernel_basis,
)
from .perm import (
    Perm,
    PermSet,
    Shuffle,
    block_swap,
    bracket_expansion_set,
    compose,
    embed,
    enumerate_shuffles,
    enumerate_shuffles_first,
    identity,
    inverse,
    jacobi_family,
    left_translate,
    parse_perm,
    parse_perm_set,
    perm_from_shuffle,
    perm_set,
    right_swap,
)

__version__ = "0.1.0"
