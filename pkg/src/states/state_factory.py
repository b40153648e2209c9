"""
Exemplar two-qubit states
Werner, zero-entanglement discorded (d1), quantum-classical (d2), pure
product and file-loaded custom states, plus their correlation regimes
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from config.settings import TOLERANCES
from src.exceptions import ParameterRangeError, StateSpecError
from src.quantum_core.angles import TWO_PI, parse_angle
from src.quantum_core.linalg import bloch_projector, validate_density_matrix

logger = logging.getLogger(__name__)

FAMILIES = ('werner', 'd1', 'd2', 'product', 'custom')
REGIMES = ('classical', 'discorded_separable', 'entangled')

_RANGE_TOLERANCE = 1e-12

UP = np.array([1.0, 0.0])
DOWN = np.array([0.0, 1.0])


@dataclass(frozen=True)
class StateFamily:
    """
    A named member of one of the state families

    Attributes:
        name: family name, one of FAMILIES
        parameter: η for werner, x for d1/d2, (θ_A, θ_B) for product,
                   the source path for custom
        matrix: validated 4x4 density matrix
    """
    name: str
    parameter: Union[float, Tuple[float, float], str]
    matrix: np.ndarray = field(repr=False, compare=False)

    @property
    def label(self) -> str:
        if self.name == 'product':
            return f"product:{self.parameter[0]:.12g},{self.parameter[1]:.12g}"
        if self.name == 'custom':
            return f"custom:{self.parameter}"
        return f"{self.name}:{self.parameter:.12g}"


def _projector(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, ket.conj())


def _x_ket(x: float) -> np.ndarray:
    return np.array([np.cos(x / 2), np.sin(x / 2)])


def _check_range(name: str, value: float, low: float, high: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value < low - _RANGE_TOLERANCE or value > high + _RANGE_TOLERANCE:
        raise ParameterRangeError(f"{name} parameter {value} outside [{low:.12g}, {high:.12g}]")
    return min(max(value, low), high)


def werner(eta: float) -> StateFamily:
    """
    Werner state ρ_W(η) = (1 − η)𝟙/4 + η|ψ−⟩⟨ψ−|

    Args:
        eta: mixing parameter in [0, 1]

    Raises:
        ParameterRangeError: if eta is outside [0, 1]
    """
    eta = _check_range('werner', eta, 0.0, 1.0)
    singlet = (np.kron(UP, DOWN) - np.kron(DOWN, UP)) / np.sqrt(2)
    rho = (1 - eta) * np.eye(4) / 4 + eta * _projector(singlet)
    return StateFamily('werner', eta, validate_density_matrix(rho, dims=(4,)))


def d1(x: float) -> StateFamily:
    """
    Separable discorded state ½[|↑⟩⟨↑| ⊗ |↑⟩⟨↑| + |x⟩⟨x| ⊗ |x⟩⟨x|]
    with |x⟩ = cos(x/2)|↑⟩ + sin(x/2)|↓⟩, x in [0, 2π]
    """
    x = _check_range('d1', x, 0.0, TWO_PI)
    ket = _x_ket(x)
    rho = 0.5 * (np.kron(_projector(UP), _projector(UP)) + np.kron(_projector(ket), _projector(ket)))
    return StateFamily('d1', x, validate_density_matrix(rho, dims=(4,)))


def d2(x: float) -> StateFamily:
    """
    Quantum-classical state ½[|↑⟩⟨↑| ⊗ |↑⟩⟨↑| + |↓⟩⟨↓| ⊗ |x⟩⟨x|], x in [0, 2π]

    Qubit A carries orthogonal flags, so the A marginal is 𝟙/2 for every x
    and the state has zero discord when A is the measured side.
    """
    x = _check_range('d2', x, 0.0, TWO_PI)
    rho = 0.5 * (np.kron(_projector(UP), _projector(UP)) + np.kron(_projector(DOWN), _projector(_x_ket(x))))
    return StateFamily('d2', x, validate_density_matrix(rho, dims=(4,)))


def product(theta_a: float, theta_b: float) -> StateFamily:
    """Pure product of the Bloch kets pointing along θ_A and θ_B (azimuth 0)"""
    rho = np.kron(bloch_projector(theta_a, +1), bloch_projector(theta_b, +1))
    return StateFamily('product', (float(theta_a), float(theta_b)), validate_density_matrix(rho, dims=(4,)))


def custom(path: Union[str, Path]) -> StateFamily:
    """
    Load a 4x4 density matrix from a text file

    The file holds 16 whitespace-separated complex entries in row-major order,
    each written as 're+imj' (Python complex literal syntax).

    Raises:
        StateSpecError: if the file is missing or malformed
        InvalidDensityMatrixError: if the matrix is not a valid state
    """
    path = Path(path)
    try:
        tokens = path.read_text().split()
    except OSError as e:
        raise StateSpecError(f"Cannot read custom state file {path}: {e}")

    if len(tokens) != 16:
        raise StateSpecError(f"Custom state file {path} holds {len(tokens)} entries, expected 16")
    try:
        entries = [complex(token) for token in tokens]
    except ValueError as e:
        raise StateSpecError(f"Bad complex entry in {path}: {e}")

    rho = np.array(entries, dtype=complex).reshape(4, 4)
    logger.info(f"Loaded custom state from {path}")
    return StateFamily('custom', str(path), validate_density_matrix(rho, dims=(4,)))


def parse_state_spec(spec: str) -> StateFamily:
    """
    Build a state from its specification string

    Grammar: 'werner:<eta>', 'd1:<x>', 'd2:<x>', 'product:<theta_A>,<theta_B>'
    or 'custom:<path>'. Angles accept π fractions such as 'pi/2'.

    Raises:
        StateSpecError: on unknown families or unparsable parameters
        ParameterRangeError: on out-of-range parameters
    """
    if not isinstance(spec, str) or ':' not in spec:
        raise StateSpecError(f"State spec must look like '<family>:<parameter>', got {spec!r}")

    name, _, argument = spec.partition(':')
    name = name.strip().lower()
    argument = argument.strip()

    if name == 'custom':
        return custom(argument)

    try:
        if name == 'werner':
            return werner(float(argument))
        if name == 'd1':
            return d1(parse_angle(argument))
        if name == 'd2':
            return d2(parse_angle(argument))
        if name == 'product':
            parts = argument.split(',')
            if len(parts) != 2:
                raise StateSpecError(f"product expects two angles, got {argument!r}")
            return product(parse_angle(parts[0]), parse_angle(parts[1]))
    except ValueError as e:
        raise StateSpecError(f"Bad parameter in state spec {spec!r}: {e}")

    raise StateSpecError(f"Unknown state family {name!r}; expected one of {', '.join(FAMILIES)}")


def regime(family: StateFamily) -> str:
    """
    Correlation regime of a family member by parameter range

    werner: η = 0 classical, 0 < η ≤ 1/3 discorded_separable, else entangled.
    d1/d2: x ∈ {0, π, 2π} classical, else discorded_separable.
    product states are classical.

    Raises:
        StateSpecError: for custom states, which have no documented regime
    """
    tol = TOLERANCES['probability']
    if family.name == 'werner':
        eta = family.parameter
        if eta <= tol:
            return 'classical'
        if eta <= 1.0 / 3.0 + tol:
            return 'discorded_separable'
        return 'entangled'
    if family.name in ('d1', 'd2'):
        x = family.parameter
        if min(abs(x), abs(x - np.pi), abs(x - TWO_PI)) <= tol:
            return 'classical'
        return 'discorded_separable'
    if family.name == 'product':
        return 'classical'
    raise StateSpecError(f"No documented regime for {family.name} states")


def state_zoo() -> List[StateFamily]:
    """Representative members of every built-in family"""
    return [
        werner(0.0), werner(0.1), werner(1.0 / 3.0), werner(0.5), werner(1.0),
        d1(0.0), d1(np.pi / 2), d1(np.pi), d1(1.0), d1(5.0),
        d2(0.0), d2(np.pi / 2), d2(np.pi), d2(2.0),
        product(0.0, 0.0), product(0.3, 1.2), product(np.pi / 2, 2.5),
    ]
