"""Bayesian constant-sum measurement game"""

from .bayesian_game import (
    ALPHA_TYPES,
    ANGLE_NAMES,
    BETA_TYPES,
    PAYOFF_TABLES,
    PLAYERS,
    QUANTITIES,
    GameInstance,
    PayoffTensor,
    Priors,
    StrategyProfile,
    biased_payoffs,
    block_tables,
    build_game,
    conditional_prob,
    correlation_gap,
    deviation_gap,
    evaluate_batch,
    expected_payoff,
    explicit_payoffs,
    f_function,
    load_game_config,
    outcome_probabilities,
    payoffs_by_name,
    require_constant_sum,
    save_game_config,
    standard_payoffs,
)
from .payoff_surface import SurfaceGrid, compute_surface, parse_sweep

__all__ = [
    'ALPHA_TYPES', 'ANGLE_NAMES', 'BETA_TYPES', 'PAYOFF_TABLES', 'PLAYERS', 'QUANTITIES',
    'GameInstance', 'PayoffTensor', 'Priors', 'StrategyProfile', 'SurfaceGrid',
    'biased_payoffs', 'block_tables', 'build_game', 'compute_surface', 'conditional_prob',
    'correlation_gap', 'deviation_gap', 'evaluate_batch', 'expected_payoff', 'explicit_payoffs',
    'f_function', 'load_game_config', 'outcome_probabilities', 'parse_sweep', 'payoffs_by_name',
    'require_constant_sum', 'save_game_config', 'standard_payoffs',
]
