"""
Analytic Check Suite
Closed-form identities every shipped state and payoff table must satisfy,
evaluated against the numerical code paths
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from config.settings import TOLERANCES
from src.discord import DiscordCalculator
from src.exceptions import InvalidDensityMatrixError
from src.game import (
    biased_payoffs,
    build_game,
    conditional_prob,
    deviation_gap,
    evaluate_batch,
    outcome_probabilities,
    standard_payoffs,
)
from src.quantum_core.angles import TWO_PI
from src.states import d2, parse_state_spec, product, state_zoo, werner

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-12
OUTCOME_PAIRS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        mark = 'PASS' if self.passed else 'FAIL'
        return f"[{mark}] {self.name}: {self.detail}"


class AnalyticChecker:
    """Runs the closed-form agreement checks"""

    def __init__(self, seed: int = 20240611, state_spec: Optional[str] = None, samples: int = 1000):
        """
        Initialize the checker

        Args:
            seed: seed of the random angle draws
            state_spec: extra state to validate alongside the built-in ones
            samples: random draws per sampled check
        """
        self.rng = np.random.default_rng(seed)
        self.state_spec = state_spec
        self.samples = samples
        self.checks: Dict[str, Callable[[], CheckResult]] = {
            'density_matrices': self.check_density_matrices,
            'werner_uniform': self.check_werner_uniform,
            'quantum_classical_x0': self.check_quantum_classical_x0,
            'quantum_classical_xpi': self.check_quantum_classical_xpi,
            'normalisation': self.check_normalisation,
            'constant_sum': self.check_constant_sum,
            'vectorised_agreement': self.check_vectorised_agreement,
            'deviation_gap': self.check_deviation_gap,
            'discord_endpoints': self.check_discord_endpoints,
        }

    def _angles(self, count: int) -> np.ndarray:
        return self.rng.uniform(0.0, TWO_PI, size=count)

    def check_density_matrices(self) -> CheckResult:
        """Every zoo member (and the optional extra state) is a valid density matrix"""
        try:
            states = state_zoo()
            if self.state_spec:
                states.append(parse_state_spec(self.state_spec))
        except InvalidDensityMatrixError as e:
            return CheckResult('density_matrices', False, f"invalid density matrix ({e})")
        return CheckResult('density_matrices', True, f"{len(states)} states valid")

    def check_werner_uniform(self) -> CheckResult:
        """P = 1/4 for the maximally mixed Werner state"""
        rho = werner(0.0).matrix
        alphas, betas = self._angles(self.samples), self._angles(self.samples)
        outcomes = self.rng.choice([1, -1], size=(self.samples, 2))
        worst = max(abs(conditional_prob(rho, a, b, int(s), int(t)) - 0.25)
                    for a, b, (s, t) in zip(alphas, betas, outcomes))
        return CheckResult('werner_uniform', worst <= IDENTITY_TOLERANCE, f"max deviation {worst:.2e}")

    def _closed_form_grid(self, name: str, rho: np.ndarray, formula) -> CheckResult:
        grid = np.linspace(0.0, TWO_PI, 50)
        worst = 0.0
        for a in grid:
            for b in grid:
                for s, t in OUTCOME_PAIRS:
                    worst = max(worst, abs(conditional_prob(rho, a, b, s, t) - formula(a, b, s, t)))
        return CheckResult(name, worst <= IDENTITY_TOLERANCE, f"max deviation {worst:.2e} on 50x50 grid")

    def check_quantum_classical_x0(self) -> CheckResult:
        """d2(0): P = ¼(1 + σ′ cos θ_β)"""
        return self._closed_form_grid('quantum_classical_x0', d2(0.0).matrix,
                                      lambda a, b, s, t: 0.25 * (1 + t * np.cos(b)))

    def check_quantum_classical_xpi(self) -> CheckResult:
        """d2(π): P = ¼(1 + σσ′ cos θ_α cos θ_β)"""
        return self._closed_form_grid('quantum_classical_xpi', d2(np.pi).matrix,
                                      lambda a, b, s, t: 0.25 * (1 + s * t * np.cos(a) * np.cos(b)))

    def check_normalisation(self) -> CheckResult:
        zoo = state_zoo()
        worst = 0.0
        for k in range(self.samples):
            rho = zoo[k % len(zoo)].matrix
            a, b = self._angles(2)
            total = sum(conditional_prob(rho, a, b, s, t) for s, t in OUTCOME_PAIRS)
            worst = max(worst, abs(total - 1))
        return CheckResult('normalisation', worst <= IDENTITY_TOLERANCE, f"max |ΣP − 1| {worst:.2e}")

    def check_constant_sum(self) -> CheckResult:
        """U_A + U_B = 1 for both payoff tables on every zoo state"""
        profiles = self.rng.uniform(0.0, TWO_PI, size=(self.samples, 4))
        worst = 0.0
        for payoffs in (standard_payoffs(), biased_payoffs()):
            for family in state_zoo():
                game = build_game(family, payoffs)
                total = evaluate_batch(game, profiles, 'A') + evaluate_batch(game, profiles, 'B')
                worst = max(worst, float(np.max(np.abs(total - 1))))
        return CheckResult('constant_sum', worst <= IDENTITY_TOLERANCE, f"max |U_A + U_B − 1| {worst:.2e}")

    def check_vectorised_agreement(self) -> CheckResult:
        """Bloch-decomposition probabilities match the trace formula"""
        worst = 0.0
        for family in state_zoo():
            game = build_game(family)
            a, b = self._angles(2)
            table = outcome_probabilities(game, a, b)
            for (i, s), (j, t) in [((0, 1), (0, 1)), ((0, 1), (1, -1)), ((1, -1), (0, 1)), ((1, -1), (1, -1))]:
                worst = max(worst, abs(table[i, j] - conditional_prob(family.matrix, a, b, s, t)))
        return CheckResult('vectorised_agreement', worst <= IDENTITY_TOLERANCE, f"max deviation {worst:.2e}")

    def check_deviation_gap(self) -> CheckResult:
        """deviation_gap equals the difference of two conditional probabilities"""
        worst = 0.0
        for family in state_zoo():
            a, a_star, b = self._angles(3)
            for s, t in OUTCOME_PAIRS:
                direct = deviation_gap(family.matrix, a, a_star, b, s, t)
                difference = conditional_prob(family.matrix, a, b, s, t) - conditional_prob(family.matrix, a_star, b, s, t)
                worst = max(worst, abs(direct - difference))
        return CheckResult('deviation_gap', worst <= IDENTITY_TOLERANCE, f"max deviation {worst:.2e}")

    def check_discord_endpoints(self) -> CheckResult:
        """Zero discord for werner(0) and product states, ln 2 for werner(1)"""
        calculator = DiscordCalculator()
        mixed = calculator.discord(werner(0.0).matrix).discord
        bell = calculator.discord(werner(1.0).matrix).discord
        separable = calculator.discord(product(0.4, 1.9).matrix).discord
        passed = (abs(mixed) <= TOLERANCES['discord_floor'] and abs(bell - np.log(2)) <= 1e-6
                  and abs(separable) <= 1e-9)
        return CheckResult('discord_endpoints', passed,
                           f"werner(0) {mixed:.2e}, werner(1) {bell:.9f}, product {separable:.2e}")

    def run_all(self) -> List[CheckResult]:
        """Run every check, recording a failure if a check raises"""
        results = []
        for name, check in self.checks.items():
            try:
                result = check()
            except Exception as e:
                logger.error(f"Check {name} raised {type(e).__name__}: {e}")
                result = CheckResult(name, False, f"raised {type(e).__name__}: {e}")
            results.append(result)
            logger.debug(result.line())
        return results

    @staticmethod
    def get_summary(results: List[CheckResult]) -> Dict:
        failed = [r.name for r in results if not r.passed]
        return {
            'total': len(results),
            'passed': len(results) - len(failed),
            'failed': failed,
            'checks': {r.name: {'passed': r.passed, 'detail': r.detail} for r in results},
        }


def run_checks(state_spec: Optional[str] = None, seed: int = 20240611) -> List[CheckResult]:
    return AnalyticChecker(seed=seed, state_spec=state_spec).run_all()
