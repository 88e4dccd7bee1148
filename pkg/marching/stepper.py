"""
Crank-Nicolson Range Marching
Assembles interior rows plus the two boundary rows at every x-step,
solves the tridiagonal system and records history.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple

import numpy as np

from marching.boundary import BcKind, BoundaryContext, BoundaryRow, Stencil, boundary_row
from marching.diagnostics import EnergyReport, reflected_energy_ratio
from marching.errors import ConfigError, InstabilityError, SingularSystemError
from marching.numerics import ComplexField, Grid2D, Tridiagonal, thomas_solve, trapezoid_abs2
from marching.phase import PhaseModel, Side, boundary_wavenumber
from marching.physics import CoefficientModel

logger = logging.getLogger('stepper')


@dataclass
class SimulationConfig:
    grid: Grid2D
    coeffs: CoefficientModel
    phase: PhaseModel
    bc_lower: BcKind
    bc_upper: BcKind
    initial: Callable
    snapshot_every: int = 0
    record_norms: bool = True
    record_history: bool = False
    stencil: Stencil = Stencil.HALF_CELL
    preset: str = 'custom'
    spec: Optional[Any] = None  # resolved run file, when built from one

    @property
    def bc_label(self) -> str:
        if self.bc_lower is self.bc_upper:
            return self.bc_lower.value
        return f"{self.bc_lower.value}/{self.bc_upper.value}"


@dataclass
class SimulationResult:
    initial_field: ComplexField
    final_field: ComplexField
    snapshots: List[Tuple[float, ComplexField]] = field(default_factory=list)
    norm_history: List[Tuple[float, float]] = field(default_factory=list)
    # u at every x-step, when record_history is set
    history: List[ComplexField] = field(default_factory=list)
    energy: Optional[EnergyReport] = None
    # peak |u| one cell inside either wall over the whole run
    edge_peak: float = 0.0


@dataclass
class InteriorRows:
    """Rows 1 .. n-2; lower[i] multiplies u_{i}, upper[i] multiplies u_{i+2}."""
    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray


def assemble_interior(u_old: ComplexField, x_mid: float, coeffs: CoefficientModel,
                      dx: float, dy: float, y: np.ndarray) -> InteriorRows:
    """
    i (u^{n+1} - u^n)/dx + (beta/2)(D_yy u^{n+1} + D_yy u^n) + (nu/2)(u^{n+1} + u^n) = 0
    with beta, nu sampled at x_mid.
    """
    if not (dx > 0 and dy > 0):
        raise ValueError(f"steps must be positive, got dx={dx}, dy={dy}")
    u = u_old.values
    beta = coeffs.beta(x_mid)
    nu = np.asarray(coeffs.nu(x_mid, y[1:-1]), dtype=float)

    off = beta / (2.0 * dy ** 2)
    m = u.shape[0] - 2
    lap = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / dy ** 2
    return InteriorRows(
        lower=np.full(m, off, dtype=np.complex128),
        diag=1j / dx - beta / dy ** 2 + 0.5 * nu,
        upper=np.full(m, off, dtype=np.complex128),
        rhs=1j * u[1:-1] / dx - 0.5 * beta * lap - 0.5 * nu * u[1:-1],
    )


def boundary_context(state: ComplexField, side: Side, x_mid: float,
                     config: SimulationConfig, kind: BcKind) -> BoundaryContext:
    grid = config.grid
    y_b = grid.a if side is Side.LOWER else grid.b
    u = state.values
    u_old = (u[0], u[1], u[2]) if side is Side.LOWER else (u[-1], u[-2], u[-3])

    if kind is BcKind.DIRICHLET:
        wave = {'k': 0.0, 'k_y': 0.0, 'k_yy': 0.0}
    else:
        wave = boundary_wavenumber(config.phase, side, x_mid, grid.y_axis)

    return BoundaryContext(
        side=side,
        beta=float(config.coeffs.beta(x_mid)),
        nu=float(config.coeffs.nu(x_mid, y_b)),
        nu_y=float(config.coeffs.nu_y(x_mid, y_b)),
        k=wave['k'],
        k_y=wave['k_y'],
        k_yy=wave['k_yy'],
        dx=grid.dx,
        dy=grid.dy,
        u_old=u_old,
        stencil=config.stencil,
    )


def _close_system(interior: InteriorRows, lower_row: BoundaryRow,
                  upper_row: BoundaryRow) -> Tuple[Tridiagonal, np.ndarray]:
    """Stack boundary rows around the interior; a third coefficient is folded
    into the adjacent interior row by one elimination."""
    n = interior.diag.shape[0] + 2
    diag = np.empty(n, dtype=np.complex128)
    lower = np.zeros(n - 1, dtype=np.complex128)
    upper = np.zeros(n - 1, dtype=np.complex128)
    rhs = np.empty(n, dtype=np.complex128)

    diag[1:-1] = interior.diag
    lower[:-1] = interior.lower
    upper[1:] = interior.upper
    rhs[1:-1] = interior.rhs

    c = list(lower_row.new_coeffs) + [0j] * (3 - len(lower_row.new_coeffs))
    r = lower_row.rhs
    if c[2] != 0:
        f = c[2] / interior.upper[0]
        c[0] -= f * interior.lower[0]
        c[1] -= f * interior.diag[0]
        r -= f * interior.rhs[0]
    diag[0], upper[0], rhs[0] = c[0], c[1], r

    c = list(upper_row.new_coeffs) + [0j] * (3 - len(upper_row.new_coeffs))
    r = upper_row.rhs
    if c[2] != 0:
        f = c[2] / interior.lower[-1]
        c[0] -= f * interior.upper[-1]
        c[1] -= f * interior.diag[-1]
        r -= f * interior.rhs[-1]
    diag[-1], lower[-1], rhs[-1] = c[0], c[1], r

    return Tridiagonal(lower, diag, upper), rhs


def step(state: ComplexField, n: int, config: SimulationConfig) -> ComplexField:
    """
    March from x_n to x_{n+1}.

    Raises:
        SingularSystemError: zero pivot, tagged with the step index
    """
    grid = config.grid
    dx, dy = grid.dx, grid.dy
    x_mid = grid.x_axis.point(n) + 0.5 * dx

    interior = assemble_interior(state, x_mid, config.coeffs, dx, dy, grid.y_axis.points)
    lower_row = boundary_row(
        config.bc_lower, boundary_context(state, Side.LOWER, x_mid, config, config.bc_lower)
    )
    upper_row = boundary_row(
        config.bc_upper, boundary_context(state, Side.UPPER, x_mid, config, config.bc_upper)
    )
    system, rhs = _close_system(interior, lower_row, upper_row)

    try:
        values = thomas_solve(system, rhs)
    except SingularSystemError as e:
        logger.error(f"STEP_ABORT | step={n} | zero pivot in row {e.row}")
        raise SingularSystemError(e.row, step=n) from e
    return ComplexField(values, n + 1)


def _edge_peak(field: ComplexField) -> float:
    u = field.values
    return float(max(abs(u[1]), abs(u[-2])))


def run(config: SimulationConfig, max_steps: Optional[int] = None) -> SimulationResult:
    """
    March from x = 0 to x_max (or `max_steps` steps), recording snapshots,
    norms and the energy report.

    Raises:
        ConfigError: non-finite initial data
        InstabilityError: non-finite values after some step
    """
    grid = config.grid
    dy = grid.dy
    y = grid.y_axis.points

    u0 = ComplexField(np.asarray(config.initial(y), dtype=np.complex128), 0)
    if len(u0) != grid.ny:
        raise ConfigError(f"initial data has {len(u0)} samples, grid has {grid.ny}", field='initial')
    if not u0.is_finite():
        raise ConfigError("initial data must be finite on the y-axis", field='initial')

    n_steps = grid.nx - 1 if max_steps is None else max(0, min(max_steps, grid.nx - 1))
    every = config.snapshot_every

    logger.info(
        f"RUN_START | {config.preset} | bc={config.bc_label} nx={grid.nx} ny={grid.ny} "
        f"steps={n_steps}"
    )
    started = time.perf_counter()

    state = u0
    snapshots = [(0.0, u0)]
    history = [u0] if config.record_history else []
    norms = [(0.0, trapezoid_abs2(u0, dy))] if config.record_norms else []
    edge_peak = _edge_peak(u0)

    for n in range(n_steps):
        state = step(state, n, config)
        x = grid.x_axis.point(n + 1)
        if not state.is_finite():
            logger.error(f"RUN_UNSTABLE | {config.preset} | step={n + 1} x={x:.6g}")
            raise InstabilityError(n + 1, x)
        edge_peak = max(edge_peak, _edge_peak(state))
        if config.record_history:
            history.append(state)
        if config.record_norms:
            norms.append((x, trapezoid_abs2(state, dy)))
        if every > 0 and (n + 1) % every == 0:
            snapshots.append((x, state))

    if snapshots[-1][1] is not state:
        snapshots.append((grid.x_axis.point(n_steps), state))

    energy = None
    if trapezoid_abs2(u0, dy) > 0:
        energy = reflected_energy_ratio(u0, state, dy, preset=config.preset,
                                        bc=config.bc_label, nx=grid.nx, ny=grid.ny)
    else:
        logger.warning(f"RUN_ZERO_ENERGY | {config.preset} | initial data vanishes, no ratio")

    elapsed = time.perf_counter() - started
    ratio = f"{energy.ratio:.4e}" if energy else 'n/a'
    logger.info(f"RUN_DONE | {config.preset} | bc={config.bc_label} ratio={ratio} elapsed={elapsed:.2f}s")

    return SimulationResult(
        initial_field=u0,
        final_field=state,
        snapshots=snapshots,
        norm_history=norms,
        history=history,
        energy=energy,
        edge_peak=edge_peak,
    )
