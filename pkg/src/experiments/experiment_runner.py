"""
Experiment Orchestrator
Runs the payoff-surface scenarios and parameter sweeps end to end: discord
in both orientations, the equilibrium search and a per-verdict summary
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from config.settings import EQUILIBRIUM_SETTINGS
from src.discord import DiscordCalculator
from src.equilibrium import VERDICTS, find_nash_equilibria
from src.exceptions import StateSpecError
from src.game import build_game
from src.states import parse_state_spec, regime
from src.storage import ResultStorage

logger = logging.getLogger(__name__)

SWEEP_FAMILIES = ('werner', 'd1', 'd2')


@dataclass(frozen=True)
class Scenario:
    """One (payoff table, state) pair with the verdict it should produce"""
    name: str
    payoffs: str
    state: str
    expected: str


def figure_scenarios() -> List[Scenario]:
    """The classical/quantum pairs for each state family and the biased table"""
    return [
        Scenario('werner_classical', 'standard', 'werner:0', 'weak_nash_flat'),
        Scenario('werner_discorded', 'standard', 'werner:0.1', 'none'),
        Scenario('d1_classical', 'standard', 'd1:0', 'weak_nash_found'),
        Scenario('d1_discorded', 'standard', 'd1:pi/2', 'none'),
        Scenario('d2_classical', 'standard', 'd2:0', 'weak_nash_flat'),
        Scenario('d2_discorded', 'standard', 'd2:pi/2', 'weak_nash_found'),
        Scenario('biased_d2_classical', 'biased', 'd2:0', 'weak_nash_found'),
        Scenario('biased_d2_discorded', 'biased', 'd2:pi/2', 'weak_nash_found'),
    ]


class ExperimentRunner:
    """Main orchestrator for scenario runs and sweeps"""

    def __init__(self,
                 grid: int = EQUILIBRIUM_SETTINGS['grid_resolution'],
                 threads: Optional[int] = None,
                 storage: Optional[ResultStorage] = None):
        """
        Initialize the runner

        Args:
            grid: equilibrium grid resolution per axis
            threads: worker threads for the grid scan
            storage: where run_all writes its artefacts
        """
        self.grid = grid
        self.threads = threads
        self.storage = storage or ResultStorage()
        self.discord_calculator = DiscordCalculator()

        logger.info(f"Experiment runner initialized (grid {grid})")

    def run_scenario(self, payoffs: str, state_spec: str) -> Dict:
        """
        Discord and equilibrium verdict for one game

        Returns:
            Row with state, parameter, regime, discord_B, discord_A, verdict,
            n_critical and n_nash
        """
        family = parse_state_spec(state_spec)
        game = build_game(family, payoffs)
        report = find_nash_equilibria(game, self.grid, self.threads)

        try:
            correlation_regime = regime(family)
        except StateSpecError:
            correlation_regime = None

        row = {
            'state': family.label,
            'family': family.name,
            'parameter': family.parameter if family.name in SWEEP_FAMILIES else None,
            'payoffs': payoffs,
            'regime': correlation_regime,
            'discord_B': self.discord_calculator.discord(family.matrix, 'measure_B').discord,
            'discord_A': self.discord_calculator.discord(family.matrix, 'measure_A').discord,
            'verdict': report.verdict,
            'flat_surface': report.flat_surface,
            'n_critical': len(report.critical_points),
            'n_nash': len(report.nash_points()),
        }
        logger.info(f"{payoffs} / {family.label}: {report.verdict}")
        return row

    def run_sweep(self, family: str, parameters: Iterable[float], payoffs: str = 'standard') -> pd.DataFrame:
        """
        Run one family over a list of parameter values

        Raises:
            StateSpecError: for families without a scalar parameter
        """
        if family not in SWEEP_FAMILIES:
            raise StateSpecError(f"Sweeps need one of {SWEEP_FAMILIES}, got {family!r}")
        rows = [self.run_scenario(payoffs, f"{family}:{float(value)!r}") for value in parameters]
        return pd.DataFrame(rows)

    def run_all(self, save: bool = True) -> Dict:
        """
        Every scenario plus the Werner and d1 sweeps

        Args:
            save: write the tables and summary through storage

        Returns:
            Summary with per-verdict counts, scenario rows and mismatches
        """
        logger.info("Starting experiment run...")

        scenario_rows = []
        for scenario in figure_scenarios():
            row = self.run_scenario(scenario.payoffs, scenario.state)
            row.update({'scenario': scenario.name, 'expected': scenario.expected})
            scenario_rows.append(row)
        scenarios = pd.DataFrame(scenario_rows)

        sweeps = pd.concat([
            self.run_sweep('werner', np.round(np.linspace(0.0, 1.0, 11), 12)),
            self.run_sweep('d1', np.round(np.linspace(0.0, np.pi, 5), 12)),
        ], ignore_index=True)

        mismatches = scenarios[scenarios['verdict'] != scenarios['expected']]['scenario'].tolist()
        for name in mismatches:
            logger.warning(f"Scenario {name} produced an unexpected verdict")

        combined = pd.concat([scenarios['verdict'], sweeps['verdict']])
        summary = {
            'grid': self.grid,
            'scenario_count': len(scenarios),
            'sweep_count': len(sweeps),
            'verdict_counts': {verdict: int((combined == verdict).sum()) for verdict in VERDICTS},
            'mismatches': mismatches,
            'scenarios': scenarios.to_dict(orient='records'),
        }

        if save:
            self.storage.save_table(scenarios, 'scenarios.csv')
            self.storage.save_table(sweeps, 'sweeps.csv')
            self.storage.save_report(summary, 'summary.json')

        return summary


def run_scenario(payoffs: str, state_spec: str, grid: int = EQUILIBRIUM_SETTINGS['grid_resolution'],
                 threads: Optional[int] = None) -> Dict:
    return ExperimentRunner(grid, threads).run_scenario(payoffs, state_spec)


def run_sweep(family: str, parameters: Iterable[float], payoffs: str = 'standard',
              grid: int = EQUILIBRIUM_SETTINGS['grid_resolution'], threads: Optional[int] = None) -> pd.DataFrame:
    return ExperimentRunner(grid, threads).run_sweep(family, parameters, payoffs)


def run_all(grid: int = EQUILIBRIUM_SETTINGS['grid_resolution'], threads: Optional[int] = None,
            storage: Optional[ResultStorage] = None, save: bool = True) -> Dict:
    return ExperimentRunner(grid, threads, storage).run_all(save=save)
