"""Analog stationary-state preparation: simulator and cost model."""

from ._qssamp import (
    absorbing_variant,
    alt_stage2_cost,
    coefficients_ab,
    discriminant,
    gen_family,
    hamiltonian,
    hitting_bound_ratio,
    hitting_time,
    interpolate,
    interpolated_stationary,
    is_reversible,
    lazify,
    mixing_time,
    overlap_alpha,
    overlap_beta,
    run_protocol,
    s_star,
    sensitivity_copies,
    sensitivity_delta,
    spectral_gap,
    stage_costs,
    stationary_distribution,
    sweep_ab,
    time_reverse,
    total_scaling,
    validate_chain,
)

__all__ = [
    "absorbing_variant",
    "alt_stage2_cost",
    "coefficients_ab",
    "discriminant",
    "gen_family",
    "hamiltonian",
    "hitting_bound_ratio",
    "hitting_time",
    "interpolate",
    "interpolated_stationary",
    "is_reversible",
    "lazify",
    "mixing_time",
    "overlap_alpha",
    "overlap_beta",
    "run_protocol",
    "s_star",
    "sensitivity_copies",
    "sensitivity_delta",
    "spectral_gap",
    "stage_costs",
    "stationary_distribution",
    "sweep_ab",
    "time_reverse",
    "total_scaling",
    "validate_chain",
]
