"""Exact *-codimension engine for finite-dimensional algebras with involution.

Thin re-export of the compiled core. Large integers cross the boundary as
Python ints; exact rationals as canonical "p/q" strings.
"""

from ._core import (
    Algebra,
    BoundReport,
    CodimSequence,
    IncompleteError,
    a_t,
    algebra_to_string,
    b_slice,
    beta_bounds,
    c_prefix,
    cell_cap,
    chain_witness,
    compare_factorial_power,
    cubic_envelope,
    dimension_envelope,
    exponent_constants,
    factorial_witness,
    greedy_schedule,
    load_algebra_file,
    parse_algebra,
    partial_codim,
    sandwich,
    sequence,
    stepwise_growth,
    stirling_check,
    subset_check,
    support,
    tilde_slice,
    total_codim,
    window_estimate,
)

__all__ = [
    "Algebra",
    "BoundReport",
    "CodimSequence",
    "IncompleteError",
    "a_t",
    "algebra_to_string",
    "b_slice",
    "beta_bounds",
    "c_prefix",
    "cell_cap",
    "chain_witness",
    "compare_factorial_power",
    "cubic_envelope",
    "dimension_envelope",
    "exponent_constants",
    "factorial_witness",
    "greedy_schedule",
    "load_algebra_file",
    "parse_algebra",
    "partial_codim",
    "sandwich",
    "sequence",
    "stepwise_growth",
    "stirling_check",
    "subset_check",
    "support",
    "tilde_slice",
    "total_codim",
    "window_estimate",
]
