"""
Result Storage Module
Writes payoff surfaces, equilibrium reports and sweep tables as CSV/JSON
"""

import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd

from config.settings import OUTPUT_SETTINGS
from src.exceptions import StorageError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def round_significant(value: Any, digits: int = OUTPUT_SETTINGS['significant_digits']) -> Any:
    """
    Round every float in a nested structure to a number of significant digits

    Non-finite floats become None so the output stays valid JSON.
    """
    if isinstance(value, dict):
        return {str(k): round_significant(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_significant(v, digits) for v in value]
    if isinstance(value, np.ndarray):
        return round_significant(value.tolist(), digits)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    return value


class ResultStorage:
    """File-based storage for every artefact the package produces"""

    def __init__(self, output_dir: Optional[PathLike] = None,
                 digits: int = OUTPUT_SETTINGS['significant_digits']):
        """
        Initialize result storage

        Args:
            output_dir: directory for files given by bare name
            digits: significant digits for every number written
        """
        self.output_dir = Path(output_dir or os.getenv('QNASH_OUTPUT_DIR') or OUTPUT_SETTINGS['output_dir'])
        self.digits = digits

    def _resolve(self, path: PathLike) -> Path:
        path = Path(path)
        if not path.is_absolute() and path.parent == Path('.'):
            path = self.output_dir / path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise StorageError(f"Cannot create directory {path.parent}: {e}")
        return path

    def save_table(self, table: pd.DataFrame, path: PathLike) -> Path:
        """
        Write a DataFrame as CSV without the index

        Raises:
            StorageError: if the file cannot be written
        """
        path = self._resolve(path)
        try:
            table.to_csv(path, index=False, float_format=f"%.{self.digits}g", lineterminator='\n')
        except OSError as e:
            raise StorageError(f"Cannot write {path}: {e}")
        logger.info(f"Saved {len(table)} rows to {path}")
        return path

    def save_surface(self, surface, path: PathLike) -> Path:
        """Write a SurfaceGrid as 'axis1,axis2,value' rows"""
        return self.save_table(surface.to_frame(), path)

    def save_report(self, report: Any, path: PathLike) -> Path:
        """
        Write a report (anything with to_dict(), or a plain dict) as JSON
        with sorted keys and rounded floats

        Raises:
            StorageError: if the file cannot be written
        """
        text = self.format_report(report)
        path = self._resolve(path)
        try:
            path.write_text(text + '\n', encoding='utf-8')
        except OSError as e:
            raise StorageError(f"Cannot write {path}: {e}")
        logger.info(f"Saved report to {path}")
        return path

    def format_report(self, report: Any) -> str:
        """The JSON text save_report would write"""
        document = report.to_dict() if hasattr(report, 'to_dict') else report
        return json.dumps(round_significant(document, self.digits), indent=2, sort_keys=True, ensure_ascii=False)
