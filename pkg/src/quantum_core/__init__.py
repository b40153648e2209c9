"""Two-qubit linear algebra"""

from .linalg import (
    bloch_projector,
    bloch_projector_batch,
    bloch_vector,
    correlation_data,
    eigenvalues_hermitian,
    entropy_bits,
    identity,
    is_hermitian,
    local_rotation,
    partial_trace,
    pauli,
    random_unitary,
    swap_subsystems,
    tensor_product,
    validate_density_matrix,
    von_neumann_entropy,
)

__all__ = [
    'bloch_projector',
    'bloch_projector_batch',
    'bloch_vector',
    'correlation_data',
    'eigenvalues_hermitian',
    'entropy_bits',
    'identity',
    'is_hermitian',
    'local_rotation',
    'partial_trace',
    'pauli',
    'random_unitary',
    'swap_subsystems',
    'tensor_product',
    'validate_density_matrix',
    'von_neumann_entropy',
]
