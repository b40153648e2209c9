"""Exemplar two-qubit states"""

from .state_factory import (
    FAMILIES,
    REGIMES,
    StateFamily,
    custom,
    d1,
    d2,
    parse_state_spec,
    product,
    regime,
    state_zoo,
    werner,
)

__all__ = [
    'FAMILIES', 'REGIMES', 'StateFamily', 'custom', 'd1', 'd2',
    'parse_state_spec', 'product', 'regime', 'state_zoo', 'werner',
]
