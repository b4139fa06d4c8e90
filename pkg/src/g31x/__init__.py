"""Exact and asymptotic edge-count machinery for the graph G(n,3,1).

Vertices are the 3-element subsets of {1..n}; edges join subsets meeting
in exactly one element.  The package computes induced edge counts, the
structure decomposition of independent sets, star-set diameters and the
capped count r_rho, the independent-set peeling procedure, evaluators
for the known lower and upper bound formulas, and small-n ground-truth
oracles that everything is cross-checked against.
"""

from .core import (
    CapExceeded,
    GraphParams,
    Triple,
    VertexSet,
    adjacency_bitsets,
    count_edges,
    count_edges_naive,
    cross_edges,
    cross_edges_naive,
    degree,
    is_edge,
    make_vertex,
    neighbor_count,
    total_edges,
    vertex_mask,
    vertex_neighbors,
    vertex_rank,
    vertex_unrank,
)
from .structure import (
    DEGENERATE,
    FULL,
    INCOMPLETE,
    TYPE1,
    TYPE2,
    TYPE3,
    Decomposition,
    DecompositionError,
    TypedGroup,
    all_maximum_independent_sets,
    alpha_exact,
    alpha_star_lower_bound,
    classify_element,
    classify_type2,
    decompose,
    diameter,
    diameter_bruteforce,
    diameter_lower,
    greedy_maximal_independent_set,
    is_independent,
    is_maximal_independent,
    is_star_set,
    is_star_set_by_partition,
    max_independent_set,
    r_rho,
    star_diameter,
    validate_decomposition,
)
from .bounds import (
    BoundInputs,
    BoundValue,
    crossover_check,
    crossover_threshold,
    formula1_upper,
    formula2_lower,
    lemma_caps,
    peeling_total_lower,
    thm1_case12_main,
    thm1_case3_bounds,
    thm1_case4_main,
    thm2_lower_main,
    thm3_pt1_upper_main,
    thm3_pt2_lower_main,
    thm3_pt3_lower_main,
    thm3_pt4_lower,
    thm4_lower_main,
)
from .peeling import (
    BHistogram,
    LemmaCheck,
    PeelReport,
    PeelStep,
    check_lemma1,
    check_lemma2,
    classify_B,
    classify_b3_case,
    peel,
)
from .oracle import (
    Construction,
    OracleResult,
    min_edges_exact,
    min_edges_table,
    min_edges_upper_construction,
)

__version__ = "0.1.0"
