"""Sato-Tate statistics for one-parameter families of elliptic curves."""

from ._stlab import (
    CacheError,
    DomainError,
    Error,
    Family,
    HypothesisError,
    InternalError,
    RefusedError,
    angle,
    charsum_max,
    count_points_naive,
    divisor_window_count,
    interval_discrepancy,
    mixed_product,
    mu_st,
    order_sum,
    run,
    star_discrepancy,
    subgroup_angles,
    sym,
    trace,
    vaughan,
    vertical_subgroup,
)

__all__ = [
    "CacheError",
    "DomainError",
    "Error",
    "Family",
    "HypothesisError",
    "InternalError",
    "RefusedError",
    "angle",
    "charsum_max",
    "count_points_naive",
    "divisor_window_count",
    "interval_discrepancy",
    "mixed_product",
    "mu_st",
    "order_sum",
    "run",
    "star_discrepancy",
    "subgroup_angles",
    "sym",
    "trace",
    "vaughan",
    "vertical_subgroup",
]
