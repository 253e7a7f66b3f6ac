"""Fusion rings and the first obstruction to realizing them by a monoidal category."""

from __future__ import annotations

from .fusion import (
    BoundsError,
    FusionMorphism,
    FusionRing,
    InvalidRingError,
    RingFormatError,
    ValidationReport,
    cyclic_group_ring,
    enumerate_fusion_rings,
    group_ring,
    make_ring,
    nary_constant,
    random_fusion_rings,
    rank2_ring,
    ring_from_dict,
    ring_to_dict,
    validate_fusion_ring,
)
from .hochschild import (
    Cochain,
    NotACocycleError,
    classify_rank2,
    classify_rank2_evaluated,
    coboundary,
    cohomology_dim,
    is_coboundary,
    rank2_cohomology,
)
from .obstruction import (
    ObstructionCocycle,
    first_obstruction,
    pentagon_sign_bruteforce,
    pentagon_sign_closed,
    pentagon_sign_six_term,
)
from .pentagon import ExactMatrix, GroupTable, check_pentagon, group_unitary, ne_case_solvable
from .permutation import Permutation, block_reindex_sign, lex_swap_sign, sort_sign_oracle
from .trees import PlanarTree, enumerate_trees, marked_index_set, parse_tree, serialize

__version__ = "0.1.0"
