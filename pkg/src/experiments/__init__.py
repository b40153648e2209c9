"""Scenario runs and parameter sweeps"""

from .experiment_runner import (
    SWEEP_FAMILIES,
    ExperimentRunner,
    Scenario,
    figure_scenarios,
    run_all,
    run_scenario,
    run_sweep,
)

__all__ = ['SWEEP_FAMILIES', 'ExperimentRunner', 'Scenario', 'figure_scenarios', 'run_all', 'run_scenario', 'run_sweep']
