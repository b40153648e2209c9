"""
Bayesian Constant-Sum Game Module
Payoff tensors, type priors, measurement-angle strategies and the expected
payoffs they induce on a shared two-qubit state
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import TOLERANCES
from src.exceptions import ConfigError, NonConstantSumError, ParameterRangeError, StateSpecError
from src.quantum_core.angles import TWO_PI, wrap_angle
from src.quantum_core.linalg import bloch_projector, correlation_data, validate_density_matrix
from src.states import StateFamily, parse_state_spec

logger = logging.getLogger(__name__)

ALPHA_TYPES = ('a', "a'")
BETA_TYPES = ('b', "b'")
OUTCOMES = (1, -1)
PLAYERS = ('A', 'B')
QUANTITIES = ('A', 'B', 'f')
ANGLE_NAMES = ('theta_a', 'theta_a_prime', 'theta_b', 'theta_b_prime')

# outcome index 0 ↔ σ = +1 (spin up), 1 ↔ σ = −1 (spin down)
_SIGNS = np.array([1.0, -1.0])


def _outcome_index(sigma: int) -> int:
    if sigma not in OUTCOMES:
        raise ValueError(f"Outcome must be +1 or -1, got {sigma}")
    return 0 if sigma == 1 else 1


def _type_index(name: str, types: Tuple[str, str]) -> int:
    try:
        return types.index(name)
    except ValueError:
        raise ValueError(f"Unknown type {name!r}; expected one of {types}")


@dataclass(frozen=True)
class PayoffTensor:
    """
    Per-outcome payoffs U[α, β, σ, σ′, player]

    entries has shape (2, 2, 2, 2, 2): α ∈ (a, a′), β ∈ (b, b′),
    σ and σ′ ∈ (+1, −1) by outcome index, player ∈ (A, B).
    """
    entries: np.ndarray
    name: str = 'explicit'

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.shape != (2, 2, 2, 2, 2):
            raise ConfigError(f"Payoff tensor must have shape (2, 2, 2, 2, 2), got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ConfigError("Payoff tensor contains non-finite entries")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    def entry(self, alpha: str, beta: str, sigma: int, sigma_prime: int, player: str) -> float:
        return float(self.entries[_type_index(alpha, ALPHA_TYPES), _type_index(beta, BETA_TYPES),
                                  _outcome_index(sigma), _outcome_index(sigma_prime),
                                  PLAYERS.index(player)])

    @property
    def cell_sums(self) -> np.ndarray:
        return self.entries.sum(axis=-1)

    @property
    def is_constant_sum(self) -> bool:
        sums = self.cell_sums
        return bool(np.ptp(sums) <= TOLERANCES['constant_sum'])

    @property
    def constant(self) -> float:
        """Common A + B cell sum; raises NonConstantSumError if cells differ"""
        if not self.is_constant_sum:
            raise NonConstantSumError(f"Cell sums range over [{self.cell_sums.min():.6g}, {self.cell_sums.max():.6g}]")
        return float(self.cell_sums.flat[0])

    def to_list(self):
        return self.entries.reshape(16, 2).tolist()


def standard_payoffs() -> PayoffTensor:
    """
    The CHSH-type table: Alice scores 1 on matched outcomes in blocks
    (a,b), (a,b′), (a′,b) and on mismatched outcomes in (a′,b′); Bob the complement
    """
    entries = np.zeros((2, 2, 2, 2, 2))
    for i in range(2):
        for j in range(2):
            anti = (i, j) == (1, 1)
            for s in range(2):
                for t in range(2):
                    alice_wins = (s == t) != anti
                    entries[i, j, s, t] = (1.0, 0.0) if alice_wins else (0.0, 1.0)
    return PayoffTensor(entries, name='standard')


def biased_payoffs() -> PayoffTensor:
    """Standard table with cell (a, b, ↓, ↓) changed to Alice 2, Bob −1"""
    entries = np.array(standard_payoffs().entries)
    entries[0, 0, 1, 1] = (2.0, -1.0)
    return PayoffTensor(entries, name='biased')


def explicit_payoffs(entries: Sequence[Sequence[float]]) -> PayoffTensor:
    """
    Payoff tensor from 16 [U_A, U_B] pairs ordered
    (α ∈ [a, a′]) × (β ∈ [b, b′]) × (σ ∈ [+1, −1]) × (σ′ ∈ [+1, −1])

    Raises:
        ConfigError: on a wrong number of cells or non-numeric entries
    """
    try:
        array = np.array(entries, dtype=float)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Payoff entries must be numeric pairs: {e}")
    if array.shape != (16, 2):
        raise ConfigError(f"Explicit payoffs need 16 [U_A, U_B] pairs, got shape {array.shape}")
    return PayoffTensor(array.reshape(2, 2, 2, 2, 2), name='explicit')


PAYOFF_TABLES = {
    'standard': standard_payoffs,
    'biased': biased_payoffs,
}


def payoffs_by_name(name: str) -> PayoffTensor:
    try:
        return PAYOFF_TABLES[name]()
    except KeyError:
        raise ConfigError(f"Unknown payoff table {name!r}; expected one of {', '.join(PAYOFF_TABLES)}")


@dataclass(frozen=True)
class Priors:
    """Joint type probabilities p[α, β], shared by both players"""
    p: np.ndarray = field(default_factory=lambda: np.full((2, 2), 0.25))

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (2, 2):
            raise ConfigError(f"Priors must have shape (2, 2), got {p.shape}")
        if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
            raise ConfigError(f"Every prior must lie in [0, 1], got {p.ravel().tolist()}")
        if abs(p.sum() - 1) > TOLERANCES['probability']:
            raise ConfigError(f"Priors must sum to 1, got {p.sum():.15g}")
        p.setflags(write=False)
        object.__setattr__(self, 'p', p)

    @classmethod
    def uniform(cls) -> 'Priors':
        return cls()

    @classmethod
    def from_dict(cls, mapping: Dict[str, float]) -> 'Priors':
        """Read priors keyed 'a,b', "a,b'", "a',b", "a',b'"; missing keys are 0"""
        p = np.zeros((2, 2))
        for key, value in mapping.items():
            parts = [part.strip() for part in str(key).split(',')]
            if len(parts) != 2:
                raise ConfigError(f"Prior key must look like 'a,b', got {key!r}")
            try:
                p[_type_index(parts[0], ALPHA_TYPES), _type_index(parts[1], BETA_TYPES)] = float(value)
            except ValueError as e:
                raise ConfigError(str(e))
        return cls(p)

    def to_dict(self) -> Dict[str, float]:
        return {f"{alpha},{beta}": float(self.p[i, j])
                for i, alpha in enumerate(ALPHA_TYPES) for j, beta in enumerate(BETA_TYPES)}

    @property
    def is_uniform(self) -> bool:
        return bool(np.allclose(self.p, 0.25, atol=TOLERANCES['probability'], rtol=0))


@dataclass(frozen=True)
class StrategyProfile:
    """Alice's angles (θ_a, θ_a′) and Bob's angles (θ_b, θ_b′), each in [0, 2π]"""
    theta_a: float
    theta_a_prime: float
    theta_b: float
    theta_b_prime: float

    def __post_init__(self):
        for name in ANGLE_NAMES:
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < -TOLERANCES['probability'] or value > TWO_PI + TOLERANCES['probability']:
                raise ParameterRangeError(f"{name} = {value} outside [0, 2π]")
            object.__setattr__(self, name, value)

    def as_array(self) -> np.ndarray:
        return np.array([self.theta_a, self.theta_a_prime, self.theta_b, self.theta_b_prime])

    @classmethod
    def from_array(cls, angles: Iterable[float]) -> 'StrategyProfile':
        """Build a profile from four angles, wrapping them onto [0, 2π)"""
        angles = wrap_angle(np.asarray(list(angles), dtype=float))
        if angles.shape != (4,):
            raise ValueError(f"A profile needs four angles, got {angles.shape}")
        return cls(*angles)

    def replace(self, name: str, value: float) -> 'StrategyProfile':
        angles = self.as_array()
        angles[ANGLE_NAMES.index(name)] = value
        return StrategyProfile.from_array(angles)

    def to_dict(self) -> Dict[str, float]:
        return dict(zip(ANGLE_NAMES, self.as_array().tolist()))


@dataclass(frozen=True)
class GameInstance:
    """
    A payoff tensor, priors and a shared state

    Attributes:
        payoffs: per-outcome payoff tensor
        priors: joint type probabilities
        state: validated 4x4 density matrix
        state_label: state spec string the game was built from, if any
    """
    payoffs: PayoffTensor
    priors: Priors
    state: np.ndarray = field(repr=False, compare=False)
    state_label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'state', validate_density_matrix(self.state, dims=(4,)))
        object.__setattr__(self, '_correlations', correlation_data(self.state))

    @property
    def correlations(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._correlations

    def weights(self, quantity: str) -> np.ndarray:
        """
        prior[α, β] times the per-outcome quantity, shape (2, 2, 2, 2)

        quantity 'A' or 'B' selects a player's payoff; 'f' selects
        (U_A − U_B)/2, whose expectation is U_A − C for constant-sum tables.
        """
        if quantity not in QUANTITIES:
            raise ValueError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
        entries = self.payoffs.entries
        if quantity == 'A':
            per_outcome = entries[..., 0]
        elif quantity == 'B':
            per_outcome = entries[..., 1]
        else:
            per_outcome = 0.5 * (entries[..., 0] - entries[..., 1])
        return self.priors.p[:, :, None, None] * per_outcome

    def describe(self) -> Dict:
        return {
            'state': self.state_label,
            'payoffs': self.payoffs.name,
            'priors': 'uniform' if self.priors.is_uniform else self.priors.to_dict(),
        }


def build_game(state: Union[str, StateFamily, np.ndarray],
               payoffs: Union[str, PayoffTensor] = 'standard',
               priors: Optional[Priors] = None) -> GameInstance:
    """
    Assemble a game from a state spec (or family / matrix) and a payoff table

    Args:
        state: 'werner:0.5'-style spec, a StateFamily or a 4x4 matrix
        payoffs: table name or a PayoffTensor
        priors: defaults to uniform
    """
    if isinstance(state, str):
        state = parse_state_spec(state)
    if isinstance(state, StateFamily):
        label, matrix = state.label, state.matrix
    else:
        label, matrix = None, state
    if isinstance(payoffs, str):
        payoffs = payoffs_by_name(payoffs)
    return GameInstance(payoffs=payoffs, priors=priors or Priors.uniform(), state=matrix, state_label=label)


def _probabilities(correlations, theta_alpha, theta_beta) -> np.ndarray:
    """
    P(σ, σ′ | θ_α, θ_β) from the Bloch decomposition of the state

    theta_alpha and theta_beta broadcast against each other; the result has
    their broadcast shape followed by the (σ, σ′) axes.
    """
    r_a, r_b, t = correlations
    theta_alpha = np.asarray(theta_alpha, dtype=float)
    theta_beta = np.asarray(theta_beta, dtype=float)
    sin_a, cos_a = np.sin(theta_alpha), np.cos(theta_alpha)
    sin_b, cos_b = np.sin(theta_beta), np.cos(theta_beta)

    local_a = r_a[0] * sin_a + r_a[2] * cos_a
    local_b = r_b[0] * sin_b + r_b[2] * cos_b
    joint = (t[0, 0] * sin_a * sin_b + t[0, 2] * sin_a * cos_b
             + t[2, 0] * cos_a * sin_b + t[2, 2] * cos_a * cos_b)
    local_a, local_b, joint = np.broadcast_arrays(local_a, local_b, joint)

    s = _SIGNS[:, None]
    s_prime = _SIGNS[None, :]
    return 0.25 * (1 + s * local_a[..., None, None] + s_prime * local_b[..., None, None]
                   + s * s_prime * joint[..., None, None])


def conditional_prob(state: np.ndarray, theta_alpha: float, theta_beta: float,
                     sigma: int, sigma_prime: int) -> float:
    """
    P(σ, σ′ | θ_α, θ_β) = Tr[(Π_σ(θ_α) ⊗ Π_σ′(θ_β)) ρ], clamped to [0, 1]

    Raises:
        InvalidDensityMatrixError: if state is not a valid 4x4 density matrix
    """
    state = validate_density_matrix(state, dims=(4,))
    measurement = np.kron(bloch_projector(theta_alpha, sigma), bloch_projector(theta_beta, sigma_prime))
    value = float(np.trace(measurement @ state).real)
    return min(max(value, 0.0), 1.0)


def outcome_probabilities(game: GameInstance, theta_alpha, theta_beta) -> np.ndarray:
    """Vectorised outcome distribution over arrays of angle pairs"""
    return _probabilities(game.correlations, theta_alpha, theta_beta)


def deviation_gap(state: np.ndarray, theta_alpha: float, theta_alpha_star: float, theta_beta: float,
                  sigma: int, sigma_prime: int) -> float:
    """Tr[((Π_σ(θ_α) − Π_σ(θ_α*)) ⊗ Π_σ′(θ_β)) ρ]"""
    state = validate_density_matrix(state, dims=(4,))
    difference = bloch_projector(theta_alpha, sigma) - bloch_projector(theta_alpha_star, sigma)
    operator = np.kron(difference, bloch_projector(theta_beta, sigma_prime))
    return float(np.trace(operator @ state).real)


def evaluate_batch(game: GameInstance, angles: np.ndarray, quantity: str = 'A') -> np.ndarray:
    """
    Expected value of a payoff quantity for many profiles at once

    Args:
        game: the game
        angles: array (..., 4) ordered (θ_a, θ_a′, θ_b, θ_b′)
        quantity: 'A', 'B' or 'f'

    Returns:
        Array of the leading shape of angles
    """
    angles = np.asarray(angles, dtype=float)
    weights = game.weights(quantity)
    total = np.zeros(angles.shape[:-1])
    for i in range(2):
        for j in range(2):
            if not np.any(weights[i, j]):
                continue
            probabilities = _probabilities(game.correlations, angles[..., i], angles[..., 2 + j])
            total = total + np.einsum('...st,st->...', probabilities, weights[i, j])
    return total


def expected_payoff(game: GameInstance, profile: StrategyProfile, player: str) -> float:
    """U_i = Σ_{α,β} prior(α,β) Σ_{σ,σ′} U[α,β,σ,σ′,i] P(σ,σ′|θ_α,θ_β)"""
    if player not in PLAYERS:
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    return float(evaluate_batch(game, profile.as_array(), player))


def require_constant_sum(game: GameInstance) -> float:
    """Return the cell constant, raising NonConstantSumError if there is none"""
    return game.payoffs.constant


def f_function(game: GameInstance, profile: StrategyProfile) -> float:
    """
    f = U_A − C with C = (U_A + U_B)/2, so that U_B = C − f

    Raises:
        NonConstantSumError: if the payoff cells do not share one A + B sum
    """
    require_constant_sum(game)
    return float(evaluate_batch(game, profile.as_array(), 'f'))


def correlation_gap(game: GameInstance, profile: StrategyProfile) -> Dict[str, float]:
    """Block correlators E_{αβ} = Σ σσ′ P(σ,σ′|θ_α,θ_β)"""
    angles = profile.as_array()
    parity = np.outer(_SIGNS, _SIGNS)
    gaps = {}
    for i, alpha in enumerate(ALPHA_TYPES):
        for j, beta in enumerate(BETA_TYPES):
            probabilities = outcome_probabilities(game, angles[i], angles[2 + j])
            gaps[f"{alpha},{beta}"] = float(np.sum(parity * probabilities))
    return gaps


def block_tables(game: GameInstance, thetas_alpha: np.ndarray, thetas_beta: np.ndarray,
                 quantity: str = 'f') -> np.ndarray:
    """
    Contribution of each type block on an angle grid

    g[α, β, m, n] = prior(α,β) Σ_{σ,σ′} w[α,β,σ,σ′] P(σ,σ′|thetas_alpha[m], thetas_beta[n]),
    so the quantity at (θ_a, θ_a′, θ_b, θ_b′) is Σ_{α,β} g[α, β] at the
    matching grid indices.

    Returns:
        Array of shape (2, 2, len(thetas_alpha), len(thetas_beta))
    """
    thetas_alpha = np.asarray(thetas_alpha, dtype=float)
    thetas_beta = np.asarray(thetas_beta, dtype=float)
    probabilities = _probabilities(game.correlations, thetas_alpha[:, None], thetas_beta[None, :])
    return np.einsum('mnst,abst->abmn', probabilities, game.weights(quantity))


def load_game_config(path: Union[str, Path]) -> GameInstance:
    """
    Read a game from a JSON document

    {"state": "d2:pi/2", "payoffs": "standard" | "biased" | [[uA, uB] x 16],
     "priors": "uniform" | {"a,b": 0.25, ...}}

    Raises:
        ConfigError: on unreadable files or bad fields
        StateSpecError, ParameterRangeError: on a bad state spec
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except OSError as e:
        raise ConfigError(f"Cannot read game configuration {path}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"Game configuration {path} is not valid JSON: {e}")

    if not isinstance(document, dict) or 'state' not in document:
        raise ConfigError(f"Game configuration {path} must be an object with a 'state' field")

    payoffs = document.get('payoffs', 'standard')
    if isinstance(payoffs, list):
        payoffs = explicit_payoffs(payoffs)
    elif not isinstance(payoffs, str):
        raise ConfigError("'payoffs' must be a table name or a list of 16 [U_A, U_B] pairs")

    priors = document.get('priors', 'uniform')
    if priors == 'uniform':
        priors = Priors.uniform()
    elif isinstance(priors, dict):
        priors = Priors.from_dict(priors)
    else:
        raise ConfigError("'priors' must be 'uniform' or a mapping like {'a,b': 0.25}")

    if not isinstance(document['state'], str):
        raise StateSpecError("'state' must be a state spec string")

    logger.info(f"Loaded game configuration from {path}")
    return build_game(document['state'], payoffs, priors)


def save_game_config(game: GameInstance, path: Union[str, Path]) -> Path:
    """Write a game as a JSON document that load_game_config reads back"""
    if game.state_label is None:
        raise ConfigError("Games built from a bare matrix have no state spec to save")
    document = {
        'state': game.state_label,
        'payoffs': game.payoffs.name if game.payoffs.name in PAYOFF_TABLES else game.payoffs.to_list(),
        'priors': 'uniform' if game.priors.is_uniform else game.priors.to_dict(),
    }
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + '\n')
    except OSError as e:
        raise ConfigError(f"Cannot write game configuration {path}: {e}")
    return path
