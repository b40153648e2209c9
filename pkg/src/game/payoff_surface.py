"""
Two-angle payoff surfaces
Sweeps two of the four measurement angles over [0, 2π] with the other two
held fixed
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from config.settings import SURFACE_SETTINGS
from src.quantum_core.angles import TWO_PI

from .bayesian_game import ANGLE_NAMES, QUANTITIES, GameInstance, evaluate_batch, require_constant_sum

logger = logging.getLogger(__name__)


@dataclass
class SurfaceGrid:
    """
    A payoff quantity sampled on a square grid of two angles

    values[i, j] belongs to (axis1_values[i], axis2_values[j]).
    """
    axis1: str
    axis2: str
    fixed_angles: Dict[str, float]
    resolution: int
    quantity: str
    axis1_values: np.ndarray = field(repr=False)
    axis2_values: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def to_frame(self) -> pd.DataFrame:
        """Rows (axis1, axis2, value) with axis1 varying slowest"""
        first, second = np.meshgrid(self.axis1_values, self.axis2_values, indexing='ij')
        return pd.DataFrame({'axis1': first.ravel(), 'axis2': second.ravel(), 'value': self.values.ravel()})


def parse_sweep(sweep, fixed: Dict[str, float]) -> Tuple[str, str]:
    """
    Check that two swept and two fixed angles cover all four exactly once

    Raises:
        ValueError: on unknown, repeated or missing angle names
    """
    sweep = tuple(sweep)
    names = list(sweep) + list(fixed)
    unknown = [name for name in names if name not in ANGLE_NAMES]
    if unknown:
        raise ValueError(f"Unknown angle names {unknown}; expected {ANGLE_NAMES}")
    if len(sweep) != 2 or len(fixed) != 2 or sorted(names) != sorted(ANGLE_NAMES):
        raise ValueError(f"Sweep {list(sweep)} and fixed {list(fixed)} must split the four angles two and two")
    return sweep[0], sweep[1]


def compute_surface(game: GameInstance,
                    quantity: str = SURFACE_SETTINGS['player'],
                    sweep=SURFACE_SETTINGS['sweep'],
                    fixed: Optional[Dict[str, float]] = None,
                    resolution: int = SURFACE_SETTINGS['resolution']) -> SurfaceGrid:
    """
    Sample U_A, U_B or f over two swept angles

    Args:
        game: the game
        quantity: 'A', 'B' or 'f'
        sweep: the two swept angle names, e.g. ('theta_a', 'theta_b')
        fixed: the other two angles and their values in radians
        resolution: samples per axis over [0, 2π] inclusive
    """
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    if quantity == 'f':
        require_constant_sum(game)
    if resolution < 2:
        raise ValueError(f"Surface resolution must be at least 2, got {resolution}")
    fixed = dict(fixed) if fixed is not None else {'theta_a_prime': np.pi / 2, 'theta_b_prime': np.pi / 2}
    axis1, axis2 = parse_sweep(sweep, fixed)

    samples = np.linspace(0.0, TWO_PI, resolution)
    angles = np.empty((resolution, resolution, 4))
    for name, value in fixed.items():
        angles[..., ANGLE_NAMES.index(name)] = float(value)
    angles[..., ANGLE_NAMES.index(axis1)] = samples[:, None]
    angles[..., ANGLE_NAMES.index(axis2)] = samples[None, :]

    values = evaluate_batch(game, angles, quantity)
    logger.debug(f"Surface of {quantity} over ({axis1}, {axis2}): range [{values.min():.6g}, {values.max():.6g}]")
    return SurfaceGrid(axis1=axis1, axis2=axis2, fixed_angles={k: float(v) for k, v in fixed.items()},
                       resolution=resolution, quantity=quantity, axis1_values=samples,
                       axis2_values=samples.copy(), values=values)
