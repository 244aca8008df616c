"""Storage-latency tradeoff of cache-aided interference networks.

Exact rationals cross the boundary as fractions.Fraction; pass them in as
Fraction, "p/q" strings, or ints.
"""

from ._ndtopt import (
    binomial,
    classify_region,
    closed_form,
    compute,
    feasible,
    index_set,
    ndt_from_ratios,
    ndt_lower_coded,
    ndt_lower_uncoded,
    ndt_upper,
    optimal_ratios,
    per_user_dof,
    simulate,
    solve_lp,
    sum_dof,
    validate_split,
    verify_scheme,
)

__all__ = [
    "binomial",
    "classify_region",
    "closed_form",
    "compute",
    "feasible",
    "index_set",
    "ndt_from_ratios",
    "ndt_lower_coded",
    "ndt_lower_uncoded",
    "ndt_upper",
    "optimal_ratios",
    "per_user_dof",
    "simulate",
    "solve_lp",
    "sum_dof",
    "validate_split",
    "verify_scheme",
]
