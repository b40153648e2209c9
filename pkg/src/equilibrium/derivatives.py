"""
Finite-difference derivatives of the minimax function and the
diagonal-sign classification of its critical points
"""

import logging
from typing import Callable, Union

import numpy as np

from config.settings import EQUILIBRIUM_SETTINGS
from src.game import GameInstance, StrategyProfile, evaluate_batch, require_constant_sum

logger = logging.getLogger(__name__)

CLASSIFICATIONS = ('strict_nash', 'weak_nash', 'not_nash')

Objective = Union[GameInstance, Callable[[np.ndarray], np.ndarray]]


def objective_function(objective: Objective) -> Callable[[np.ndarray], np.ndarray]:
    """
    Turn a game into a vectorised f over (..., 4) angle arrays

    Callables are passed through so that synthetic surfaces can be
    differentiated with the same code.
    """
    if isinstance(objective, GameInstance):
        require_constant_sum(objective)
        return lambda angles: evaluate_batch(objective, angles, 'f')
    if callable(objective):
        return objective
    raise TypeError(f"Expected a GameInstance or a callable, got {type(objective).__name__}")


def _as_angles(profile) -> np.ndarray:
    if isinstance(profile, StrategyProfile):
        return profile.as_array()
    angles = np.asarray(profile, dtype=float)
    if angles.shape != (4,):
        raise ValueError(f"A profile needs four angles, got shape {angles.shape}")
    return angles


def jacobian(game: Objective, profile, step: float = EQUILIBRIUM_SETTINGS['jacobian_step']) -> np.ndarray:
    """
    Gradient (∂f/∂θ_a, ∂f/∂θ_a′, ∂f/∂θ_b, ∂f/∂θ_b′) by central differences

    Args:
        game: game instance or vectorised objective
        profile: StrategyProfile or four angles
        step: difference step in radians
    """
    f = objective_function(game)
    x = _as_angles(profile)
    shifts = step * np.eye(4)
    values = f(np.concatenate([x + shifts, x - shifts]))
    return (values[:4] - values[4:]) / (2 * step)


def hessian_diag(game: Objective, profile, step: float = EQUILIBRIUM_SETTINGS['hessian_step']) -> np.ndarray:
    """The four second partials ∂²f/∂θ_k² by central second differences"""
    f = objective_function(game)
    x = _as_angles(profile)
    shifts = step * np.eye(4)
    values = f(np.concatenate([x + shifts, x - shifts, x[None, :]]))
    return (values[:4] + values[4:8] - 2 * values[8]) / step ** 2


def hessian(game: Objective, profile, step: float = EQUILIBRIUM_SETTINGS['hessian_step']) -> np.ndarray:
    """
    Full 4x4 finite-difference Hessian

    Off-diagonal entries use the four-point mixed stencil; the diagonal
    matches hessian_diag.
    """
    f = objective_function(game)
    x = _as_angles(profile)
    shifts = step * np.eye(4)

    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    rows = [x + shifts, x - shifts, x[None, :]]
    for i, j in pairs:
        rows.append(np.stack([
            x + shifts[i] + shifts[j],
            x + shifts[i] - shifts[j],
            x - shifts[i] + shifts[j],
            x - shifts[i] - shifts[j],
        ]))
    values = f(np.concatenate(rows))

    h = np.diag((values[:4] + values[4:8] - 2 * values[8]) / step ** 2)
    for k, (i, j) in enumerate(pairs):
        pp, pm, mp, mm = values[9 + 4 * k: 13 + 4 * k]
        h[i, j] = h[j, i] = (pp - pm - mp + mm) / (4 * step ** 2)
    return h


def classify(diagonal, zero_band: float = EQUILIBRIUM_SETTINGS['hessian_zero_band']) -> str:
    """
    Label a critical point from its Hessian diagonal

    f must be locally maximal in Alice's angles (first two entries) and
    locally minimal in Bob's (last two). Entries inside ±zero_band count as
    zero: strict_nash needs every entry outside the band with the right
    sign, weak_nash allows band entries as long as no entry has the wrong
    sign.

    Raises:
        ValueError: on non-finite input or a wrong number of entries
    """
    diagonal = np.asarray(diagonal, dtype=float)
    if diagonal.shape != (4,):
        raise ValueError(f"Expected four Hessian diagonal entries, got shape {diagonal.shape}")
    if not np.all(np.isfinite(diagonal)):
        raise ValueError(f"Hessian diagonal contains non-finite entries: {diagonal.tolist()}")

    alice, bob = diagonal[:2], diagonal[2:]
    if np.any(alice > zero_band) or np.any(bob < -zero_band):
        return 'not_nash'
    if np.all(alice < -zero_band) and np.all(bob > zero_band):
        return 'strict_nash'
    return 'weak_nash'
