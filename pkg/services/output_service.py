"""
Output Service
Energy tables, snapshot CSVs, log-magnitude matrices and error maps.
Identical inputs produce byte-identical files.
"""
import logging
import os
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import LOG_FLOOR
from marching.diagnostics import ENERGY_CSV_COLUMNS, EnergyReport
from marching.numerics import ComplexField

logger = logging.getLogger('output_service')

ENERGY_CSV = 'energy.csv'
LOG_MATRIX_FILE = 'log_magnitude.txt'
ERROR_MAP_FILE = 'error_map.txt'
SNAPSHOT_COLUMNS = ['x', 'y', 're', 'im']


def _ensure_dir(out_dir: str):
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as e:
        raise ValueError(f"output directory '{out_dir}' is not writable: {e}") from e


class OutputService:
    """Writers for run artifacts"""

    @staticmethod
    def energy_frame(reports: Sequence[EnergyReport]) -> pd.DataFrame:
        return pd.DataFrame([r.to_row() for r in reports], columns=ENERGY_CSV_COLUMNS)

    @staticmethod
    def write_energy_csv(reports: Sequence[EnergyReport], out_dir: str,
                         filename: str = ENERGY_CSV) -> str:
        _ensure_dir(out_dir)
        path = os.path.join(out_dir, filename)
        OutputService.energy_frame(reports).to_csv(path, index=False)
        logger.info(f"ENERGY_WRITTEN | {path} | rows={len(reports)}")
        return path

    @staticmethod
    def format_energy_rows(reports: Sequence[EnergyReport]) -> str:
        """CSV text (header plus rows) as printed by the CLI"""
        return OutputService.energy_frame(reports).to_csv(index=False)

    @staticmethod
    def write_field_csv(snapshots: List[Tuple[float, ComplexField]], y: np.ndarray,
                        out_dir: str,
                        history: Optional[Sequence[ComplexField]] = None) -> List[str]:
        """
        One `x,y,re,im` CSV per snapshot plus the log10(|u| + 1e-300) matrix,
        one column per y point. With `history` the matrix has one row per
        x-step; otherwise one row per snapshot.

        Returns:
            Paths written, snapshot files first
        """
        _ensure_dir(out_dir)
        paths = []
        for i, (x, field) in enumerate(snapshots):
            u = field.values
            if len(u) != len(y):
                raise ValueError(f"snapshot {i} has {len(u)} values, y-axis has {len(y)}")
            frame = pd.DataFrame({
                'x': np.full(len(y), x),
                'y': y,
                're': u.real,
                'im': u.imag,
            }, columns=SNAPSHOT_COLUMNS)
            path = os.path.join(out_dir, f"snapshot_{field.x_index:05d}.csv")
            frame.to_csv(path, index=False)
            paths.append(path)

        fields = list(history) if history else [field for _, field in snapshots]
        for i, field in enumerate(fields):
            if len(field) != len(y):
                raise ValueError(f"history row {i} has {len(field)} values, y-axis has {len(y)}")
        matrix = np.vstack([np.log10(np.abs(field.values) + LOG_FLOOR) for field in fields])

        matrix_path = os.path.join(out_dir, LOG_MATRIX_FILE)
        np.savetxt(matrix_path, matrix, fmt='%.10e', delimiter=' ')
        paths.append(matrix_path)
        logger.info(f"FIELD_WRITTEN | {out_dir} | snapshots={len(snapshots)} rows={matrix.shape[0]}")
        return paths

    @staticmethod
    def write_error_map(matrix: np.ndarray, out_dir: str, filename: str = ERROR_MAP_FILE) -> str:
        _ensure_dir(out_dir)
        path = os.path.join(out_dir, filename)
        np.savetxt(path, matrix, fmt='%.10e', delimiter=' ')
        return path
