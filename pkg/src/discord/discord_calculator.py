"""
Quantum Discord Module
Mutual information, post-measurement conditional states and one-way discord
of two-qubit states under projective spin measurements
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import minimize, minimize_scalar

from config.settings import DISCORD_SETTINGS, TOLERANCES
from src.exceptions import ZeroProbabilityBranchError
from src.quantum_core.angles import TWO_PI
from src.quantum_core.linalg import (
    bloch_projector,
    bloch_projector_batch,
    identity,
    partial_trace,
    swap_subsystems,
    validate_density_matrix,
    von_neumann_entropy,
)

logger = logging.getLogger(__name__)

ORIENTATIONS = ('measure_B', 'measure_A')


@dataclass(frozen=True)
class DiscordResult:
    """
    Outcome of a discord minimisation

    Attributes:
        discord: minimised I − J in nats, exactly 0 below the numerical floor
        optimal_theta: polar angle of the minimising measurement
        mutual_information: pre-measurement mutual information in nats
        j_value: post-measurement mutual information at the optimum
        optimal_phi: azimuth of the minimising measurement (0 unless scanned)
        orientation: which subsystem was measured
    """
    discord: float
    optimal_theta: float
    mutual_information: float
    j_value: float
    optimal_phi: float = 0.0
    orientation: str = 'measure_B'

    def to_dict(self) -> Dict:
        return {
            'discord': self.discord,
            'optimal_theta': self.optimal_theta,
            'optimal_phi': self.optimal_phi,
            'mutual_information': self.mutual_information,
            'j_value': self.j_value,
            'orientation': self.orientation,
        }


def _entropy_from_spectrum(eigenvalues: np.ndarray) -> np.ndarray:
    eigenvalues = np.clip(eigenvalues, 0.0, 1.0)
    with np.errstate(divide='ignore', invalid='ignore'):
        terms = np.where(eigenvalues > 0, -eigenvalues * np.log(eigenvalues), 0.0)
    return terms.sum(axis=-1)


class DiscordCalculator:
    """Discord of two-qubit states, measuring subsystem B"""

    def __init__(self,
                 grid_points: int = DISCORD_SETTINGS['grid_points'],
                 xatol: float = DISCORD_SETTINGS['refine_xatol'],
                 azimuth_points: int = DISCORD_SETTINGS['azimuth_points']):
        """
        Initialize the calculator

        Args:
            grid_points: θ samples over [0, 2π] before refinement
            xatol: angular tolerance of the bounded refinement
            azimuth_points: φ samples over [0, π] when the azimuth is scanned
        """
        self.grid_points = grid_points
        self.xatol = xatol
        self.azimuth_points = azimuth_points

    def mutual_information(self, rho: np.ndarray) -> float:
        """I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ) in nats"""
        rho = validate_density_matrix(rho, dims=(4,))
        return (von_neumann_entropy(partial_trace(rho, 'A'))
                + von_neumann_entropy(partial_trace(rho, 'B'))
                - von_neumann_entropy(rho))

    def post_measurement_state(self, rho: np.ndarray, theta: float, sigma: int,
                               phi: float = 0.0) -> Tuple[float, np.ndarray]:
        """
        Probability and conditional state of A after outcome σ on B

        Returns:
            (p_σ, ρ_A|σ)

        Raises:
            ZeroProbabilityBranchError: if p_σ is below the zero-branch tolerance
        """
        rho = validate_density_matrix(rho, dims=(4,))
        measurement = np.kron(identity(2), bloch_projector(theta, sigma, phi))
        probability = float(np.trace(measurement @ rho).real)
        if probability <= TOLERANCES['zero_branch']:
            raise ZeroProbabilityBranchError(probability)

        projected = measurement @ rho @ measurement
        reduced = np.einsum('ikjk->ij', projected.reshape(2, 2, 2, 2))
        reduced = 0.5 * (reduced + reduced.conj().T) / np.trace(reduced).real
        return probability, validate_density_matrix(reduced, dims=(2,))

    def conditional_entropy(self, rho: np.ndarray, theta: float, phi: float = 0.0) -> float:
        """Σ_σ p_σ S(ρ_A|σ); zero-probability branches contribute nothing"""
        total = 0.0
        for sigma in (1, -1):
            try:
                probability, conditional = self.post_measurement_state(rho, theta, sigma, phi)
            except ZeroProbabilityBranchError as e:
                logger.debug(f"Skipping empty branch σ={sigma} at θ={theta:.6f}: p={e.probability:.3e}")
                continue
            total += probability * von_neumann_entropy(conditional)
        return total

    def j_post_measurement(self, rho: np.ndarray, theta: float, phi: float = 0.0) -> float:
        """J(ρ|θ) = S(ρ_A) − conditional entropy"""
        rho = validate_density_matrix(rho, dims=(4,))
        return von_neumann_entropy(partial_trace(rho, 'A')) - self.conditional_entropy(rho, theta, phi)

    def _conditional_entropy_batch(self, rho: np.ndarray, thetas: np.ndarray,
                                   phi: float = 0.0) -> np.ndarray:
        """Vectorised conditional entropy over an array of θ at a fixed φ"""
        tensor = np.asarray(rho).reshape(2, 2, 2, 2)
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        total = np.zeros(thetas.shape)
        for sigma in (1, -1):
            projectors = bloch_projector_batch(thetas, sigma, phi)
            # Tr_B[(𝟙 ⊗ Π) ρ (𝟙 ⊗ Π)] = Σ_kl ρ[(i,k),(j,l)] Π[l,k]
            unnormalised = np.einsum('ikjl,nlk->nij', tensor, projectors)
            probability = np.einsum('nii->n', unnormalised).real
            a = unnormalised[:, 0, 0].real
            d = unnormalised[:, 1, 1].real
            radius = np.hypot(0.5 * (a - d), np.abs(unnormalised[:, 0, 1]))
            mean = 0.5 * (a + d)
            live = probability > TOLERANCES['zero_branch']
            safe = np.where(live, probability, 1.0)
            spectrum = np.stack([(mean - radius) / safe, (mean + radius) / safe], axis=-1)
            total += np.where(live, probability * _entropy_from_spectrum(spectrum), 0.0)
        return total

    def discord(self, rho: np.ndarray, orientation: str = DISCORD_SETTINGS['orientation'],
                scan_azimuth: bool = False) -> DiscordResult:
        """
        One-way discord minimised over projective measurements

        A coarse θ grid is refined with a bounded scalar minimiser around the
        best sample. With scan_azimuth the grid becomes (θ, φ) and the
        refinement runs Nelder-Mead in two dimensions.

        Args:
            rho: valid 4x4 density matrix
            orientation: 'measure_B' (default) or 'measure_A'
            scan_azimuth: also minimise over the azimuthal angle
        """
        if orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
        rho = validate_density_matrix(rho, dims=(4,))
        if orientation == 'measure_A':
            rho = swap_subsystems(rho)

        mutual = self.mutual_information(rho)
        s_a = von_neumann_entropy(partial_trace(rho, 'A'))
        offset = mutual - s_a

        thetas = np.linspace(0.0, TWO_PI, self.grid_points)
        if scan_azimuth:
            theta, phi, minimum = self._minimise_with_azimuth(rho, thetas)
        else:
            theta, minimum = self._minimise_polar(rho, thetas)
            phi = 0.0

        value = offset + minimum
        j_value = mutual - value
        floor = TOLERANCES['discord_floor']
        if abs(value) < floor:
            value = 0.0
        elif value < 0:
            logger.warning(f"Negative discord {value:.3e} ({orientation}) is outside the ±{floor:.0e} rounding band")

        logger.debug(f"Discord ({orientation}) = {value:.6e} at θ={theta:.6f}, φ={phi:.6f}")
        return DiscordResult(discord=float(value), optimal_theta=float(theta), mutual_information=float(mutual),
                             j_value=float(j_value), optimal_phi=float(phi), orientation=orientation)

    def _minimise_polar(self, rho: np.ndarray, thetas: np.ndarray) -> Tuple[float, float]:
        values = self._conditional_entropy_batch(rho, thetas)
        best = int(np.argmin(values))
        step = thetas[1] - thetas[0]
        low, high = thetas[best] - step, thetas[best] + step

        result = minimize_scalar(
            lambda t: self._conditional_entropy_batch(rho, t)[0],
            bounds=(low, high), method='bounded', options={'xatol': self.xatol},
        )
        if result.success and result.fun < values[best]:
            return float(np.mod(result.x, TWO_PI)), float(result.fun)
        return float(thetas[best]), float(values[best])

    def _minimise_with_azimuth(self, rho: np.ndarray, thetas: np.ndarray) -> Tuple[float, float, float]:
        phis = np.linspace(0.0, np.pi, self.azimuth_points)
        values = np.stack([self._conditional_entropy_batch(rho, thetas, phi) for phi in phis], axis=1)
        i, j = np.unravel_index(int(np.argmin(values)), values.shape)
        start = np.array([thetas[i], phis[j]])

        result = minimize(
            lambda x: self._conditional_entropy_batch(rho, x[0], x[1])[0],
            start, method='Nelder-Mead', options={'xatol': self.xatol, 'fatol': 1e-14},
        )
        if result.fun < values[i, j]:
            return float(np.mod(result.x[0], TWO_PI)), float(result.x[1]), float(result.fun)
        return float(start[0]), float(start[1]), float(values[i, j])

    def discord_profile(self, rho: np.ndarray, thetas: Optional[np.ndarray] = None,
                        orientation: str = DISCORD_SETTINGS['orientation']) -> pd.DataFrame:
        """
        I − J(θ) over a set of polar angles

        Returns:
            DataFrame with columns theta and gap
        """
        rho = validate_density_matrix(rho, dims=(4,))
        if orientation == 'measure_A':
            rho = swap_subsystems(rho)
        if thetas is None:
            thetas = np.linspace(0.0, TWO_PI, self.grid_points)
        thetas = np.asarray(thetas, dtype=float)

        offset = self.mutual_information(rho) - von_neumann_entropy(partial_trace(rho, 'A'))
        gaps = offset + self._conditional_entropy_batch(rho, thetas)
        return pd.DataFrame({'theta': thetas, 'gap': gaps})


_default = DiscordCalculator()


def mutual_information(rho: np.ndarray) -> float:
    return _default.mutual_information(rho)


def post_measurement_state(rho: np.ndarray, theta: float, sigma: int, phi: float = 0.0) -> Tuple[float, np.ndarray]:
    return _default.post_measurement_state(rho, theta, sigma, phi)


def conditional_entropy(rho: np.ndarray, theta: float, phi: float = 0.0) -> float:
    return _default.conditional_entropy(rho, theta, phi)


def j_post_measurement(rho: np.ndarray, theta: float, phi: float = 0.0) -> float:
    return _default.j_post_measurement(rho, theta, phi)


def discord(rho: np.ndarray, orientation: str = DISCORD_SETTINGS['orientation'],
            scan_azimuth: bool = False) -> DiscordResult:
    return _default.discord(rho, orientation=orientation, scan_azimuth=scan_azimuth)


def discord_profile(rho: np.ndarray, thetas: Optional[np.ndarray] = None,
                    orientation: str = DISCORD_SETTINGS['orientation']) -> pd.DataFrame:
    return _default.discord_profile(rho, thetas, orientation)
