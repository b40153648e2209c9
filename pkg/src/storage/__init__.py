"""Result storage"""

from .result_storage import ResultStorage, round_significant

__all__ = ['ResultStorage', 'round_significant']
