"""Integer roundings of edge weights that preserve shortest paths.

Weights and error bounds are exact rationals: pass ints, fractions.Fraction
or strings such as "5/2" or "2.5". Rational results come back as Fraction.
"""

from ._spround import (
    BudgetExceeded,
    Graph,
    InputError,
    Reduction,
    brute_force_decide,
    brute_force_min_epsilon,
    count_roundings,
    decide,
    error_range_set,
    extract_rounding,
    minimize_epsilon,
    reduce,
    round_path,
    two_rounding,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "Graph",
    "InputError",
    "Reduction",
    "brute_force_decide",
    "brute_force_min_epsilon",
    "count_roundings",
    "decide",
    "error_range_set",
    "extract_rounding",
    "minimize_epsilon",
    "reduce",
    "round_path",
    "two_rounding",
    "verify",
]
