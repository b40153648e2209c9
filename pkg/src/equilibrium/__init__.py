"""Stationary-point search and Nash classification"""

from .derivatives import CLASSIFICATIONS, classify, hessian, hessian_diag, jacobian, objective_function
from .nash_search import (
    VERDICTS,
    CriticalPoint,
    EquilibriumReport,
    best_response_gain,
    collapse_critical_sets,
    deduplicate,
    describe_point,
    find_nash_equilibria,
    find_stationary_points,
    is_flat,
    jacobian_norm_grid,
    label_minima,
    refine_critical_point,
    select_seeds,
    verify_nash_inequalities,
)

__all__ = [
    'CLASSIFICATIONS', 'VERDICTS', 'CriticalPoint', 'EquilibriumReport',
    'best_response_gain', 'classify', 'collapse_critical_sets', 'deduplicate', 'describe_point',
    'find_nash_equilibria', 'find_stationary_points', 'hessian', 'hessian_diag', 'is_flat', 'jacobian',
    'jacobian_norm_grid', 'label_minima', 'objective_function', 'refine_critical_point',
    'select_seeds', 'verify_nash_inequalities',
]
