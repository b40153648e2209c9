"""
Measurement-angle helpers
Parsing of π-fraction tokens, wrapping onto [0, 2π) and torus distances
"""

import re

import numpy as np

TWO_PI = 2.0 * np.pi

# '3pi/4', '-pi/2', '2*pi', 'pi', '0.5pi'
_PI_TOKEN = re.compile(r'^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$', re.IGNORECASE)


def parse_angle(text: str) -> float:
    """
    Parse an angle in radians

    Accepts plain numbers and multiples/fractions of π: 'pi', 'pi/2',
    '3pi/4', '2*pi', '0.25pi'.

    Raises:
        ValueError: if the token is neither a number nor a π expression
    """
    token = str(text).strip()
    try:
        return float(token)
    except ValueError:
        pass

    match = _PI_TOKEN.match(token)
    if not match:
        raise ValueError(f"Cannot parse angle {text!r}")

    coefficient, denominator = match.groups()
    if coefficient in ('', '+'):
        factor = 1.0
    elif coefficient == '-':
        factor = -1.0
    else:
        factor = float(coefficient)
    value = factor * np.pi
    if denominator:
        value /= float(denominator)
    return value


def wrap_angle(theta):
    """Map angles onto [0, 2π)"""
    return np.mod(theta, TWO_PI)


def torus_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest per-coordinate periodic distance min(|Δ|, 2π − |Δ|)"""
    delta = np.abs(wrap_angle(np.asarray(a, dtype=float)) - wrap_angle(np.asarray(b, dtype=float)))
    return float(np.max(np.minimum(delta, TWO_PI - delta)))
