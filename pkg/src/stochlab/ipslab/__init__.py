"""Desk-scale continuous-time Monte Carlo for the contact process and the
voter model, with coalescing-walk duality checks."""

from .contact import (
    ContactConfig,
    ContactTrajectory,
    EdgeSpeedEstimate,
    SurvivalEstimate,
    center_seed,
    estimate_survival,
    right_edge_speed,
    simulate_contact,
    threshold_config,
)
from .reference import tau_leap_occupancy
from .rng import UniformBuffer, binomial_ci, trial_generator
from .stats import (
    CONSENSUS_RATE_FLOOR,
    DUALITY_Z_BOUND,
    SURVIVAL_FLOOR_SUPERCRITICAL,
    TrialStats,
)
from .voter import (
    ConsensusEstimate,
    DualityReport,
    VoterConfig,
    VoterTrajectory,
    coalescing_walk_survivors,
    consensus_rate,
    duality_check,
    simulate_voter,
)

__all__ = [
    "CONSENSUS_RATE_FLOOR",
    "ConsensusEstimate",
    "ContactConfig",
    "ContactTrajectory",
    "DUALITY_Z_BOUND",
    "DualityReport",
    "EdgeSpeedEstimate",
    "SURVIVAL_FLOOR_SUPERCRITICAL",
    "SurvivalEstimate",
    "TrialStats",
    "UniformBuffer",
    "VoterConfig",
    "VoterTrajectory",
    "binomial_ci",
    "center_seed",
    "coalescing_walk_survivors",
    "consensus_rate",
    "duality_check",
    "estimate_survival",
    "right_edge_speed",
    "simulate_contact",
    "simulate_voter",
    "tau_leap_occupancy",
    "threshold_config",
    "trial_generator",
]
