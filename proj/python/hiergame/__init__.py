"""Python bindings for the hiergame C++ core."""

from ._core import (
    binomial_pmf,
    coefficients,
    equilibrium,
    estimate_equilibrium,
    estimate_payoff,
    figure_csv,
    figure_presets,
    grc,
    h_nx,
    replicator_step,
    stability,
    two_level_edges,
    variants,
    wc,
    wd,
)

__all__ = [
    "binomial_pmf",
    "coefficients",
    "equilibrium",
    "estimate_equilibrium",
    "estimate_payoff",
    "figure_csv",
    "figure_presets",
    "grc",
    "h_nx",
    "replicator_step",
    "stability",
    "two_level_edges",
    "variants",
    "wc",
    "wd",
]
