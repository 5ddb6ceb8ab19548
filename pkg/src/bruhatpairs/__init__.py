"""Bruhat-order comparability of permutations: criteria, exact
enumeration, closed-form corner-event probabilities, and seeded Monte
Carlo estimation."""

from .ballot import (
    BallotLevel,
    LevelStats,
    WeakOrderingLevel,
    ballot_levels,
    brute_Q,
    strong_ballot_table,
    weak_ordering_levels,
    weak_ordering_table,
)
from .corner import CornerCounts, corner_event_prob, dagger_term, hypergeom_pmf
from .errors import (
    BadK,
    BadM,
    BruhatPairsError,
    LengthMismatch,
    MethodMismatch,
    NotAPermutation,
    OddN,
    TooLarge,
)
from .montecarlo import (
    DEFAULT_SEED,
    McEstimate,
    ScalingRow,
    mc_estimate,
    scaling_table,
    stream_pairs,
)
from .orders import (
    compare,
    corner_event,
    reductions,
    simple_reductions,
    strong_leq,
    strong_leq_oracle,
    top_rows_event,
    weak_leq,
    weak_leq_oracle,
)
from .perm import (
    NonInversionSet,
    Permutation,
    RngStream,
    delete_top_k,
    identity,
    inverse,
    inversion_count,
    make_perm,
    non_inversions,
    noninversion_mask,
    perm_from_string,
    perm_to_string,
    random_perm,
    rank_reverse,
    reversal,
)
from .posets import (
    Poset,
    count_linear_extensions,
    count_pairs_exact,
    harmonic,
    induced_poset,
    linext_lower_bound,
    weak_product_bound,
)

__version__ = "0.1.0"
