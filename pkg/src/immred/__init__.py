"""Exact symmetric-group characters, immanants, and two immanant reductions."""

from .characters import (
    Spectrum,
    char_sum_S,
    character_table,
    chi,
    chi_nonrecursive,
    k_spectrum,
    predict_vanishing,
    sign,
)
from .gadgets import (
    Construction1Params,
    Construction2Params,
    ConstructionError,
    build_construction1,
    build_construction2,
    validate_census,
    validate_lemma1,
    validate_match_gadget,
)
from .graphs import (
    CycleCover,
    GraphError,
    UndirectedGraph,
    WeightedDigraph,
    count_matchings,
    count_perfect_matchings,
    cover_census,
    enumerate_cycle_covers,
)
from .immanant import imm_naive, imm_poly_in_x, imm_via_covers
from .poly import UniPoly
from .reductions import (
    CensusKey,
    ReductionError,
    ZeroDivisorError,
    recover_matchings_interpolation,
    recover_matchings_modular,
    recover_matchings_symbolic,
    recover_pm_via_immanant,
    rho_of,
)
from .shapes import (
    DominoTiling,
    Partition,
    PartitionError,
    SkewShape,
    compose_hook_shape,
    conjugate,
    domino_tilings,
    horizontal_parity,
    order_leq,
    parse_partition,
)
from .tableaux import BorderStripTableau, bst_height, enumerate_bst

__version__ = "0.1.0"
