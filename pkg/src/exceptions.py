"""
Exception hierarchy for QuantumNash
"""


class QuantumNashError(Exception):
    """Base class for every error raised by the package"""


class DimensionMismatchError(QuantumNashError):
    """Matrix shapes are not the ones an operation expects"""


class NonHermitianError(QuantumNashError):
    """A matrix that must be Hermitian is not (within tolerance)"""


class InvalidDensityMatrixError(QuantumNashError):
    """
    A matrix violates a density-matrix invariant

    Attributes:
        check: name of the violated invariant ('shape', 'finite', 'hermitian',
               'trace' or 'positivity')
    """

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


class ParameterRangeError(QuantumNashError):
    """A state-family parameter lies outside its documented range"""


class StateSpecError(QuantumNashError):
    """A state specification string or custom state file cannot be parsed"""


class ZeroProbabilityBranchError(QuantumNashError):
    """
    A measurement outcome has (numerically) zero probability, so the
    conditional state of that branch is undefined

    Attributes:
        probability: the branch probability that fell below tolerance
    """

    def __init__(self, probability: float):
        super().__init__(f"branch probability {probability:.3e} is below tolerance")
        self.probability = probability


class NonConstantSumError(QuantumNashError):
    """A payoff tensor whose cells do not all sum to the same constant"""


class ConfigError(QuantumNashError):
    """A game configuration document is malformed"""


class StorageError(QuantumNashError):
    """An output artefact could not be written"""
