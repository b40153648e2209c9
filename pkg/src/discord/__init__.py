"""Quantum discord of two-qubit states"""

from .discord_calculator import (
    ORIENTATIONS,
    DiscordCalculator,
    DiscordResult,
    conditional_entropy,
    discord,
    discord_profile,
    j_post_measurement,
    mutual_information,
    post_measurement_state,
)

__all__ = [
    'ORIENTATIONS', 'DiscordCalculator', 'DiscordResult', 'conditional_entropy', 'discord',
    'discord_profile', 'j_post_measurement', 'mutual_information', 'post_measurement_state',
]
