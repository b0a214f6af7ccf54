"""Heapable subsequence toolkit.

Greedy partition of sequences into k-heapable subsequences, the
equivalent lifeline particle process with Monte Carlo scaling
estimation, heap tableaux with a Robinson-Schensted-style bijection,
and hook-length machinery with an exact filling-count oracle.
"""

from .partition import (
    HeapForest,
    MhsResult,
    brute_force_mhs,
    dominates,
    gen_family_simple,
    gen_family_X,
    greedy_count,
    greedy_mhs,
    is_k_heapable,
    signature,
)
from .hammersley import (
    EstimateReport,
    ParticleState,
    SubadditivityReport,
    TrajectoryStats,
    WordState,
    check_subadditivity,
    default_checkpoints,
    estimate_E_MHS,
    harmonic,
    left_to_right_minima,
    min_had_equals_greedy,
    phi_k,
    run_trajectory,
    step_particles,
    step_word,
    word_matches_particles,
)
from .tableaux import (
    BumpTrace,
    HeapTableau,
    Shape,
    TableauPairError,
    build_PQ,
    delete_max_standard,
    insert,
    invert_PQ,
    is_heap_tableau,
    is_standard,
    iter_build_PQ,
    lex_leq,
    shape_from_json,
    shape_of,
    shape_to_json,
    tableau_from_json,
    tableau_to_json,
    tableau_violations,
)
from .hooks import (
    FillingCount,
    corners,
    count_fillings,
    gen_T_rk,
    gen_W_r,
    hook_bound,
    hook_lengths,
    hook_walk,
)

__version__ = "0.1.0"
