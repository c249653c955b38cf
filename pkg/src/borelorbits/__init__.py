"""Congruence Borel-orbit posets of symmetric matrices.

Orbits of the congruence action s -> b^t s b of invertible upper-triangular
matrices are indexed by partial involutions; their closure order, canonical
forms and dimensions are all read off rank-control matrices.  The package
computes the posets exactly over the rationals and prime fields and ships
independent finite-field verification oracles for every formula.
"""

from .dimension import (
    DimensionReport,
    a_count,
    ambient_dim,
    antisym_representative,
    d_count,
    dim_antisymmetric,
    dim_nonsymmetric,
    dim_symmetric,
    e_count,
    incitti_d,
    involution_rank,
)
from .fields import (
    RATIONALS,
    FieldSpec,
    Matrix,
    MatrixFormatError,
    borel_random,
    congruence_transform,
    format_matrix,
    lu_transform,
    mat_rank,
    parse_matrix,
    rank_control,
    rank_control_naive,
)
from .patterns import (
    InvolutionDecomposition,
    PartialInvolution,
    PartialPermutation,
    PermStats,
    decompose,
    enumerate_partial_involutions,
    enumerate_partial_permutations,
    involutions,
    pattern_from_rank_control,
    permutation_stats,
)
from .poset import (
    GradedReport,
    OrbitElement,
    OrbitPoset,
    build_poset,
    check_graded,
    export,
    hasse_edges,
    poset_from_json,
    regular_subposet,
)
from .rankcontrol import RankControl, bruhat_leq, closure_contains, leq_R, orbit_leq
from .verify import (
    FuzzReport,
    PointCountReport,
    bruhat_oracle,
    closure_point_count,
    dimension_fit,
    invariance_fuzz,
    lu_invariance_fuzz,
    rank_control_class_counts,
    symmetric_canonicalize,
)

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "RATIONALS",
    "Matrix",
    "MatrixFormatError",
    "mat_rank",
    "rank_control",
    "rank_control_naive",
    "congruence_transform",
    "lu_transform",
    "borel_random",
    "parse_matrix",
    "format_matrix",
    "RankControl",
    "leq_R",
    "bruhat_leq",
    "orbit_leq",
    "closure_contains",
    "PartialPermutation",
    "PartialInvolution",
    "InvolutionDecomposition",
    "PermStats",
    "enumerate_partial_permutations",
    "enumerate_partial_involutions",
    "involutions",
    "pattern_from_rank_control",
    "decompose",
    "permutation_stats",
    "DimensionReport",
    "ambient_dim",
    "d_count",
    "dim_symmetric",
    "incitti_d",
    "involution_rank",
    "e_count",
    "dim_nonsymmetric",
    "a_count",
    "antisym_representative",
    "dim_antisymmetric",
    "OrbitElement",
    "OrbitPoset",
    "GradedReport",
    "build_poset",
    "hasse_edges",
    "check_graded",
    "regular_subposet",
    "export",
    "poset_from_json",
    "FuzzReport",
    "PointCountReport",
    "invariance_fuzz",
    "lu_invariance_fuzz",
    "bruhat_oracle",
    "symmetric_canonicalize",
    "rank_control_class_counts",
    "closure_point_count",
    "dimension_fit",
]
