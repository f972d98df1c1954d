"""parakat: exact combinatorics of carrel-divided tuples, pattern-avoiding
set partitions, semistandard tableaux, and their generating polynomials,
with exhaustive desk-scale verification suites.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    CapExceeded,
    DomainMismatch,
    NotAvoiding,
    NotFlagCriticalList,
    NotGapless,
    NotIncreasingUpper,
    NotUpper,
    ParakatError,
    ShapeMismatch,
)
from .polys import (
    GFHandle,
    Polynomial,
    compose_alpha,
    demazure_poly,
    demazure_poly_dd,
    flag_schur_poly,
    gapless_core_schur_poly,
    gen_fn,
    gf_identical,
    isobaric_divided_difference,
    poly_eq,
    row_bound_sum,
)
from .rperms import (
    ClumpDecomposition,
    RChain,
    RPermutation,
    all_lifts,
    count_cnr,
    count_total,
    enumerate_rperms,
    from_chain,
    inversions,
    is_312_avoiding,
    is_r312_avoiding,
    is_rightmost_clump_deleting,
    minimal_lift,
    pi_map,
    r_projection,
    rank_tuple,
    to_chain,
)
from .rtuples import (
    ClassificationReport,
    CriticalList,
    RSubset,
    RTuple,
    ceiling_map,
    classify,
    class_interval,
    core,
    critical_list,
    enumerate_critical_lists,
    enumerate_tuples,
    equivalent,
    floor_map,
    from_critical_list,
    is_gapless,
    is_gapless_core,
    is_upper,
)
from .tableaux import (
    Shape,
    Tableau,
    TableauSet,
    content,
    count_tableaux,
    demazure_set,
    enumerate_tableaux,
    ideal,
    is_convex,
    is_gapless_key,
    is_key,
    key_of_chain,
    key_of_perm,
    minimal_tableau,
    row_bound_max,
    row_bound_set,
    row_end_list,
    row_end_max,
    scanning,
    z_set,
)
from .verify import (
    SuiteReport,
    dimension_tables,
    run_suite,
    search_accidental,
    suite_bijections,
    suite_coincidence,
    suite_convexity,
    suite_counts,
    suite_lifts,
    suite_polynomials,
    suite_tables,
)
