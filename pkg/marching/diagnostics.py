"""
Diagnostics
Reflected-energy ratio, enlarged-domain reference runs and error maps.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np

from config import REFERENCE_EDGE_TOL
from marching.errors import ReferenceRunError
from marching.numerics import ComplexField, Grid2D, make_axis, trapezoid_abs2

logger = logging.getLogger('diagnostics')

ENERGY_CSV_COLUMNS = ['preset', 'bc', 'nx', 'ny', 'e0', 'e_final', 'ratio']


@dataclass(frozen=True)
class EnergyReport:
    """E/E0 = int |u(x_max, y)|^2 dy / int |u(0, y)|^2 dy over [a, b]"""
    e0: float
    e_final: float
    ratio: float
    preset: str = 'custom'
    bc: str = ''
    nx: int = 0
    ny: int = 0

    @property
    def grid_label(self) -> str:
        return f"{self.nx}x{self.ny}"

    def to_row(self) -> Dict[str, Any]:
        return {col: getattr(self, col) for col in ENERGY_CSV_COLUMNS}


def reflected_energy_ratio(u0: ComplexField, u_final: ComplexField, dy: float,
                           preset: str = 'custom', bc: str = '',
                           nx: int = 0, ny: int = 0) -> EnergyReport:
    """
    Raises:
        ValueError: fields of different length, or zero initial energy
    """
    if len(u0) != len(u_final):
        raise ValueError(f"fields differ in length: {len(u0)} vs {len(u_final)}")
    e0 = trapezoid_abs2(u0, dy)
    if not e0 > 0:
        raise ValueError("initial energy is zero; the ratio is undefined")
    e_final = trapezoid_abs2(u_final, dy)
    return EnergyReport(e0=e0, e_final=e_final, ratio=e_final / e0,
                        preset=preset, bc=bc, nx=nx, ny=ny or len(u0))


# ============================================
# Reference runs
# ============================================

def widened_grid(grid: Grid2D, widen_factor: float):
    """
    Symmetric enlargement of the y-axis by whole steps, so the original
    points reappear at indices pad .. pad + ny - 1.

    Returns:
        (wide_grid, pad)
    """
    if not widen_factor >= 2:
        raise ValueError(f"widen factor must be at least 2, got {widen_factor}")
    n, dy = grid.ny, grid.dy
    pad = int(math.ceil((widen_factor - 1.0) * (n - 1) / 2.0))
    wide_y = make_axis(grid.a - pad * dy, grid.b + pad * dy, n + 2 * pad)
    return Grid2D(grid.x_axis, wide_y), pad


def reference_run(config, widen_factor: float):
    """
    Near-exact baseline: the same march on a y-domain widened by widen_factor
    with Dirichlet walls, restricted back to the original window.

    Raises:
        ReferenceRunError: |u| one cell inside the widened walls reached
            REFERENCE_EDGE_TOL * max|u0| at some step
    """
    from marching.boundary import BcKind
    from marching.stepper import SimulationResult, run

    wide_grid, pad = widened_grid(config.grid, widen_factor)
    wide_config = dataclasses.replace(
        config, grid=wide_grid, bc_lower=BcKind.DIRICHLET, bc_upper=BcKind.DIRICHLET,
        record_history=False,
    )
    logger.info(
        f"REFERENCE_START | {config.preset} | factor={widen_factor:g} "
        f"ny={config.grid.ny}->{wide_grid.ny}"
    )
    wide = run(wide_config)

    peak0 = float(np.max(np.abs(wide.initial_field.values)))
    if wide.edge_peak >= REFERENCE_EDGE_TOL * peak0 and peak0 > 0:
        logger.error(
            f"REFERENCE_EDGE_FAIL | {config.preset} | edge={wide.edge_peak:.3e} peak0={peak0:.3e}"
        )
        raise ReferenceRunError(
            f"field reached the widened walls (edge |u| = {wide.edge_peak:.3e}, "
            f"limit {REFERENCE_EDGE_TOL * peak0:.3e}); use a widen factor larger than {widen_factor:g}"
        )

    window = slice(pad, pad + config.grid.ny)

    def restrict(field: ComplexField) -> ComplexField:
        return ComplexField(field.values[window].copy(), field.x_index)

    initial = restrict(wide.initial_field)
    final = restrict(wide.final_field)
    energy = (
        reflected_energy_ratio(initial, final, config.grid.dy, preset=config.preset,
                               bc='reference', nx=config.grid.nx, ny=config.grid.ny)
        if peak0 > 0 else None
    )
    return SimulationResult(
        initial_field=initial,
        final_field=final,
        snapshots=[(x, restrict(f)) for x, f in wide.snapshots],
        norm_history=wide.norm_history,
        energy=energy,
        edge_peak=wide.edge_peak,
    )


def error_map(result, reference) -> np.ndarray:
    """
    |u - u_ref| on every shared snapshot; rows follow the snapshot order.

    Raises:
        ValueError: snapshot positions or field lengths differ
    """
    if len(result.snapshots) != len(reference.snapshots):
        raise ValueError(
            f"snapshot count mismatch: {len(result.snapshots)} vs {len(reference.snapshots)}"
        )
    rows: List[np.ndarray] = []
    for (x, field), (x_ref, ref) in zip(result.snapshots, reference.snapshots):
        if not math.isclose(x, x_ref, rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError(f"snapshot positions differ: x={x} vs x={x_ref}")
        if len(field) != len(ref):
            raise ValueError(f"field length mismatch at x={x}: {len(field)} vs {len(ref)}")
        rows.append(np.abs(field.values - ref.values))
    return np.vstack(rows)
