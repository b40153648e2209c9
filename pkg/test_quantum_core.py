#!/usr/bin/env python3
"""Tests for the two-qubit linear algebra and angle helpers"""

import os
import sys

import numpy as np
import pytest

# Add project root to path
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.exceptions import DimensionMismatchError, InvalidDensityMatrixError, NonHermitianError
from src.quantum_core import (
    bloch_projector,
    bloch_projector_batch,
    correlation_data,
    eigenvalues_hermitian,
    entropy_bits,
    partial_trace,
    pauli,
    random_unitary,
    swap_subsystems,
    tensor_product,
    validate_density_matrix,
    von_neumann_entropy,
)
from src.quantum_core.angles import TWO_PI, parse_angle, torus_distance, wrap_angle

UP = np.array([[1, 0], [0, 0]], dtype=complex)
DOWN = np.array([[0, 0], [0, 1]], dtype=complex)


def _random_state(seed):
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(4))
    u = random_unitary(seed)
    return u @ np.diag(weights) @ u.conj().T


def test_pauli_matrices():
    for axis in 'xyz':
        p = pauli(axis)
        assert np.allclose(p, p.conj().T)
        assert abs(np.trace(p)) < 1e-15
        assert np.allclose(p @ p, np.eye(2))
    with pytest.raises(ValueError):
        pauli('w')


def test_bloch_projectors():
    rng = np.random.default_rng(1)
    for theta, phi in rng.uniform(0, TWO_PI, size=(20, 2)):
        plus = bloch_projector(theta, 1, phi)
        minus = bloch_projector(theta, -1, phi)
        assert np.allclose(plus @ plus, plus)
        assert abs(np.trace(plus) - 1) < 1e-14
        assert np.allclose(plus + minus, np.eye(2))
    assert np.allclose(bloch_projector(0.0, 1), UP)
    assert np.allclose(bloch_projector(np.pi, 1), DOWN)
    with pytest.raises(ValueError):
        bloch_projector(0.0, 0)


def test_projector_batch_matches_scalar():
    thetas = np.linspace(0, TWO_PI, 13)
    batch = bloch_projector_batch(thetas, -1, 0.7)
    for theta, projector in zip(thetas, batch):
        assert np.allclose(projector, bloch_projector(theta, -1, 0.7))


def test_tensor_product_dimensions():
    assert tensor_product(UP, DOWN).shape == (4, 4)
    with pytest.raises(DimensionMismatchError):
        tensor_product(np.eye(4), UP)


def test_validate_density_matrix_names_invariant():
    with pytest.raises(InvalidDensityMatrixError) as info:
        validate_density_matrix(np.eye(4) / 2)
    assert info.value.check == 'trace'

    skew = np.eye(4) / 4
    skew = skew.astype(complex)
    skew[0, 1] = 0.1
    with pytest.raises(InvalidDensityMatrixError) as info:
        validate_density_matrix(skew)
    assert info.value.check == 'hermitian'

    with pytest.raises(InvalidDensityMatrixError) as info:
        validate_density_matrix(np.diag([0.6, 0.6, 0.1, -0.3]))
    assert info.value.check == 'positivity'

    with pytest.raises(InvalidDensityMatrixError) as info:
        validate_density_matrix(np.eye(3) / 3)
    assert info.value.check == 'shape'


def test_eigenvalues_closed_form():
    m = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
    assert np.allclose(eigenvalues_hermitian(m), np.linalg.eigvalsh(m))
    with pytest.raises(NonHermitianError):
        eigenvalues_hermitian(np.array([[0.5, 0.3], [0.0, 0.5]]))


def test_entropy_values():
    assert abs(von_neumann_entropy(np.eye(4) / 4) - np.log(4)) < 1e-12
    assert abs(von_neumann_entropy(np.eye(2) / 2) - np.log(2)) < 1e-12
    assert abs(von_neumann_entropy(np.kron(UP, DOWN))) < 1e-12
    assert abs(entropy_bits(np.eye(4) / 4) - 2.0) < 1e-12


def test_entropy_unitary_invariance():
    rho = _random_state(7)
    u = random_unitary(11)
    assert np.allclose(u @ u.conj().T, np.eye(4))
    rotated = u @ rho @ u.conj().T
    assert abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) < 1e-10


def test_partial_trace_of_product():
    a = 0.5 * (np.eye(2) + 0.3 * pauli('x') + 0.4 * pauli('z'))
    b = bloch_projector(1.1, 1)
    rho = np.kron(a, b)
    assert np.allclose(partial_trace(rho, 'A'), a)
    assert np.allclose(partial_trace(rho, 'B'), b)
    with pytest.raises(ValueError):
        partial_trace(rho, 'C')


def test_swap_subsystems():
    a, b = bloch_projector(0.4, 1), bloch_projector(2.0, -1)
    assert np.allclose(swap_subsystems(np.kron(a, b)), np.kron(b, a))


def test_correlation_data_reconstructs_state():
    rho = _random_state(3)
    r_a, r_b, t = correlation_data(rho)
    sigmas = [pauli(axis) for axis in 'xyz']
    rebuilt = np.eye(4, dtype=complex)
    for i in range(3):
        rebuilt = rebuilt + r_a[i] * np.kron(sigmas[i], np.eye(2)) + r_b[i] * np.kron(np.eye(2), sigmas[i])
        for j in range(3):
            rebuilt = rebuilt + t[i, j] * np.kron(sigmas[i], sigmas[j])
    assert np.allclose(rebuilt / 4, rho)


def test_parse_angle():
    assert parse_angle('0.5') == 0.5
    assert abs(parse_angle('pi') - np.pi) < 1e-15
    assert abs(parse_angle('pi/2') - np.pi / 2) < 1e-15
    assert abs(parse_angle('3pi/4') - 3 * np.pi / 4) < 1e-15
    assert abs(parse_angle('2*pi') - TWO_PI) < 1e-15
    assert abs(parse_angle('-pi/2') + np.pi / 2) < 1e-15
    with pytest.raises(ValueError):
        parse_angle('half')


def test_torus_distance_wraps():
    a = np.array([1e-5, 1.0, 2.0, 3.0])
    b = np.array([TWO_PI - 1e-5, 1.0, 2.0, 3.0])
    assert torus_distance(a, b) < 1e-4
    assert abs(torus_distance(np.zeros(4), np.full(4, np.pi)) - np.pi) < 1e-12
    assert np.all(wrap_angle(np.array([-0.1, TWO_PI + 0.2])) < TWO_PI)


def main():
    """Run all tests"""
    print("=" * 60)
    print("Quantum Core Tests")
    print("=" * 60)

    tests = [(name, fn) for name, fn in globals().items() if name.startswith('test_') and callable(fn)]
    results = []
    for name, fn in tests:
        try:
            fn()
            print(f"✅ {name}")
            results.append((name, True))
        except Exception as e:
            print(f"❌ {name}: {type(e).__name__}: {e}")
            results.append((name, False))

    passed = sum(1 for _, ok in results if ok)
    print("\n" + "=" * 60)
    print(f"Passed: {passed}/{len(results)}")
    print("=" * 60)
    return passed == len(results)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
