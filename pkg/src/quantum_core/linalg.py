"""
Dense linear algebra for one- and two-qubit operators
Pauli matrices, Bloch-sphere projectors, Kronecker products, partial traces,
Hermitian spectra and von Neumann entropy

Basis ordering for two qubits is |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩ (subsystem A is the
left Kronecker factor). All functions return new read-only arrays.
"""

import logging
from typing import Tuple

import numpy as np

from config.settings import TOLERANCES
from src.exceptions import (
    DimensionMismatchError,
    InvalidDensityMatrixError,
    NonHermitianError,
)

logger = logging.getLogger(__name__)

_PAULI = {
    'x': np.array([[0, 1], [1, 0]], dtype=complex),
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': np.array([[1, 0], [0, -1]], dtype=complex),
}

SUBSYSTEMS = ('A', 'B')


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=complex)
    m.setflags(write=False)
    return m


def pauli(axis: str) -> np.ndarray:
    """
    Standard 2x2 Pauli matrix

    Args:
        axis: 'x', 'y' or 'z'

    Returns:
        Hermitian, traceless, involutory 2x2 complex matrix
    """
    try:
        return _frozen(_PAULI[axis.lower()])
    except (KeyError, AttributeError):
        raise ValueError(f"Unknown Pauli axis: {axis!r}")


def identity(dim: int = 2) -> np.ndarray:
    if dim not in (2, 4):
        raise DimensionMismatchError(f"dimension must be 2 or 4, got {dim}")
    return _frozen(np.eye(dim))


def _check_outcome(sigma: int) -> int:
    if sigma not in (1, -1):
        raise ValueError(f"Outcome must be +1 or -1, got {sigma}")
    return int(sigma)


def bloch_vector(theta: float, phi: float = 0.0) -> np.ndarray:
    """Unit Bloch vector (sin θ cos φ, sin θ sin φ, cos θ)"""
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def bloch_projector(theta: float, sigma: int, phi: float = 0.0) -> np.ndarray:
    """
    Rank-1 projector ½(𝟙 + σ n·v) for a spin measurement along n(θ, φ)

    Args:
        theta: polar angle in radians
        sigma: outcome, +1 (spin up) or -1 (spin down)
        phi: azimuthal angle; the game always uses 0

    Returns:
        2x2 Hermitian idempotent matrix with unit trace
    """
    sigma = _check_outcome(sigma)
    n = bloch_vector(theta, phi)
    n_dot_v = n[0] * _PAULI['x'] + n[1] * _PAULI['y'] + n[2] * _PAULI['z']
    return _frozen(0.5 * (np.eye(2) + sigma * n_dot_v))


def bloch_projector_batch(thetas: np.ndarray, sigma: int, phi: float = 0.0) -> np.ndarray:
    """
    Projectors for many polar angles at once

    Args:
        thetas: 1-D array of polar angles
        sigma: outcome sign shared by every projector
        phi: azimuthal angle

    Returns:
        Array of shape (len(thetas), 2, 2)
    """
    sigma = _check_outcome(sigma)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    nx = np.sin(thetas) * np.cos(phi)
    ny = np.sin(thetas) * np.sin(phi)
    nz = np.cos(thetas)
    out = np.empty((thetas.size, 2, 2), dtype=complex)
    out[:, 0, 0] = 0.5 * (1 + sigma * nz)
    out[:, 1, 1] = 0.5 * (1 - sigma * nz)
    out[:, 0, 1] = 0.5 * sigma * (nx - 1j * ny)
    out[:, 1, 0] = 0.5 * sigma * (nx + 1j * ny)
    return out


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Kronecker product A ⊗ B of two single-qubit operators

    Raises:
        DimensionMismatchError: if either factor is not 2x2
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionMismatchError(f"tensor_product expects 2x2 factors, got {a.shape} and {b.shape}")
    return _frozen(np.kron(a, b))


def is_hermitian(m: np.ndarray, tol: float = TOLERANCES['hermitian']) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def validate_density_matrix(m: np.ndarray, dims: Tuple[int, ...] = (2, 4)) -> np.ndarray:
    """
    Check the density-matrix invariants and return a read-only copy

    Args:
        m: candidate matrix
        dims: accepted dimensions

    Returns:
        The validated matrix

    Raises:
        InvalidDensityMatrixError: naming the first violated invariant
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise InvalidDensityMatrixError('shape', f"expected a square matrix of dimension {dims}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidDensityMatrixError('finite', "matrix contains NaN or Inf entries")
    if not is_hermitian(m):
        deviation = np.max(np.abs(m - m.conj().T))
        raise InvalidDensityMatrixError('hermitian', f"max |M - M†| = {deviation:.3e}")
    trace = np.trace(m)
    if abs(trace - 1) > TOLERANCES['trace']:
        raise InvalidDensityMatrixError('trace', f"trace is {trace.real:.12g}, expected 1")
    smallest = np.linalg.eigvalsh(m)[0]
    if smallest < TOLERANCES['positivity']:
        raise InvalidDensityMatrixError('positivity', f"smallest eigenvalue {smallest:.3e} is negative")
    return _frozen(m)


def eigenvalues_hermitian(m: np.ndarray) -> np.ndarray:
    """
    Real eigenvalues of a Hermitian 2x2 or 4x4 matrix, ascending

    The 2x2 case uses the closed form; larger matrices go through LAPACK's
    Hermitian solver.

    Raises:
        NonHermitianError: if ‖M − M†‖_max exceeds the tolerance
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise DimensionMismatchError(f"expected a 2x2 or 4x4 matrix, got {m.shape}")
    if not is_hermitian(m):
        raise NonHermitianError(f"max |M - M†| = {np.max(np.abs(m - m.conj().T)):.3e}")

    if m.shape[0] == 2:
        a, d = m[0, 0].real, m[1, 1].real
        mean = 0.5 * (a + d)
        radius = np.hypot(0.5 * (a - d), abs(m[0, 1]))
        return np.array([mean - radius, mean + radius])

    return np.linalg.eigvalsh(m)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """
    Von Neumann entropy S(ρ) = −Σ λ ln λ in nats, with 0·ln 0 = 0

    Args:
        rho: valid 2x2 or 4x4 density matrix

    Returns:
        Entropy in [0, ln(dim)]
    """
    rho = validate_density_matrix(rho)
    eigenvalues = np.clip(eigenvalues_hermitian(rho), 0.0, 1.0)
    nonzero = eigenvalues[eigenvalues > 0]
    return float(-np.sum(nonzero * np.log(nonzero)))


def entropy_bits(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits"""
    return von_neumann_entropy(rho) / np.log(2)


def partial_trace(rho: np.ndarray, keep: str = 'A') -> np.ndarray:
    """
    Reduced density matrix of one qubit of a two-qubit state

    Args:
        rho: valid 4x4 density matrix
        keep: 'A' to trace out B, 'B' to trace out A

    Returns:
        Valid 2x2 density matrix
    """
    rho = validate_density_matrix(rho, dims=(4,))
    if keep not in SUBSYSTEMS:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    tensor = rho.reshape(2, 2, 2, 2)
    if keep == 'A':
        reduced = np.einsum('ikjk->ij', tensor)
    else:
        reduced = np.einsum('kikj->ij', tensor)
    return validate_density_matrix(reduced, dims=(2,))


def swap_subsystems(rho: np.ndarray) -> np.ndarray:
    """Exchange the roles of qubits A and B"""
    rho = validate_density_matrix(rho, dims=(4,))
    return _frozen(rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4))


def correlation_data(rho: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Local Bloch vectors and correlation matrix of a two-qubit state

    ρ = ¼(𝟙 + r_A·v ⊗ 𝟙 + 𝟙 ⊗ r_B·v + Σ_ij T_ij σ_i ⊗ σ_j)

    Args:
        rho: valid 4x4 density matrix

    Returns:
        (r_A, r_B, T) with r_A, r_B of shape (3,) and T of shape (3, 3)
    """
    rho = validate_density_matrix(rho, dims=(4,))
    paulis = np.stack([_PAULI['x'], _PAULI['y'], _PAULI['z']])
    tensor = rho.reshape(2, 2, 2, 2)
    # Tr[(P ⊗ Q) ρ] = Σ P[j,i] Q[l,k] ρ[(i,k),(j,l)]
    r_a = np.einsum('aji,ikjk->a', paulis, tensor).real
    r_b = np.einsum('blk,ikil->b', paulis, tensor).real
    t = np.einsum('aji,blk,ikjl->ab', paulis, paulis, tensor).real
    return r_a, r_b, t


def local_rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    """Single-qubit rotation exp(−i·angle·n·v) about the unit vector n"""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    n_dot_v = axis[0] * _PAULI['x'] + axis[1] * _PAULI['y'] + axis[2] * _PAULI['z']
    return np.cos(angle) * np.eye(2) - 1j * np.sin(angle) * n_dot_v


def random_unitary(seed: int) -> np.ndarray:
    """
    Random 4x4 unitary built from local rotations around a CNOT entangler

    Args:
        seed: seed for numpy's default generator

    Returns:
        (U1 ⊗ U2) · CNOT · (U3 ⊗ U4) with random rotation axes and angles
    """
    rng = np.random.default_rng(seed)
    rotations = [local_rotation(rng.normal(size=3), rng.uniform(0, np.pi)) for _ in range(4)]
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    return np.kron(rotations[0], rotations[1]) @ cnot @ np.kron(rotations[2], rotations[3])
