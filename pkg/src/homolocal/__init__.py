"""Measure and localize Z2 homology classes with geodesic balls."""

from .basis import BasisResult, measure_all, seal_cycle
from .complex import (
    INF,
    Chain,
    Simplex,
    SimplicialComplex,
    betti,
    boundary_matrix,
    build_complex,
    geodesic_ball,
    geodesic_filter,
    is_cycle,
)
from .errors import (
    EmptyInput,
    HomolocalError,
    InputError,
    InternalInconsistency,
    NoNontrivialClass,
    NotACycle,
    SealedCenter,
    SealedInput,
    TooLarge,
)
from .measure import (
    bmin_improved,
    bmin_naive,
    contains_nonbounding,
    localized_cycle,
    measure_smallest,
    precompute_basis_cycles,
)
from .onedim import localized_cycle_1d
from .persistence import first_essential_birth, persistence_pairs
from .z2 import SparseZ2Matrix, column_reduce, rank_dense, rank_randomized

__version__ = "0.1.0"

__all__ = [
    "INF",
    "BasisResult",
    "Chain",
    "EmptyInput",
    "HomolocalError",
    "InputError",
    "InternalInconsistency",
    "NoNontrivialClass",
    "NotACycle",
    "SealedCenter",
    "SealedInput",
    "Simplex",
    "SimplicialComplex",
    "SparseZ2Matrix",
    "TooLarge",
    "betti",
    "bmin_improved",
    "bmin_naive",
    "boundary_matrix",
    "build_complex",
    "column_reduce",
    "contains_nonbounding",
    "first_essential_birth",
    "geodesic_ball",
    "geodesic_filter",
    "is_cycle",
    "localized_cycle",
    "localized_cycle_1d",
    "measure_all",
    "measure_smallest",
    "persistence_pairs",
    "precompute_basis_cycles",
    "rank_dense",
    "rank_randomized",
    "seal_cycle",
]
