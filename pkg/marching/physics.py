"""
Physics Models
Coefficient models beta(x), nu(x, y), exact solutions of
i u_x + beta u_yy + nu u = 0 and a finite-difference residual oracle.
"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pandas as pd
from scipy.interpolate import RegularGridInterpolator

logger = logging.getLogger('physics')


# ============================================
# Coefficient models
# ============================================

@dataclass(frozen=True)
class CoefficientModel:
    """
    beta(x) > 0, nu(x, y) and nu_y(x, y).

    `nu` and `nu_y` accept scalar or array `y` and return the same shape.
    """
    beta: Callable
    nu: Callable
    nu_y: Callable
    name: str = 'custom'


def centered_nu_y(nu: Callable, step: float) -> Callable:
    """nu_y by centered differences, used when no analytic derivative exists."""
    def nu_y(x, y):
        y = np.asarray(y, dtype=float)
        return (nu(x, y + step) - nu(x, y - step)) / (2.0 * step)
    return nu_y


def constant_coefficients(beta0: float, nu0: float, name: str = 'constant') -> CoefficientModel:
    if not beta0 > 0:
        raise ValueError(f"beta must be positive, got {beta0}")

    def nu(x, y):
        return np.full(np.shape(y), float(nu0)) if np.ndim(y) else float(nu0)

    def nu_y(x, y):
        return np.zeros(np.shape(y)) if np.ndim(y) else 0.0

    return CoefficientModel(beta=lambda x: float(beta0), nu=nu, nu_y=nu_y, name=name)


def benchmark_coefficients() -> CoefficientModel:
    """beta = 1, nu = 0: the Gaussian-beam benchmark medium."""
    return constant_coefficients(1.0, 0.0, name='benchmark')


def tabulated_coefficients(
    x_beta: np.ndarray,
    beta_values: np.ndarray,
    x_nu: np.ndarray,
    y_nu: np.ndarray,
    nu_table: np.ndarray,
    dy: float,
) -> CoefficientModel:
    """
    Separable tabulated medium: beta on an x-grid (linear interpolation),
    nu on a full (x, y) grid (bilinear, extrapolated at the edges).
    nu_y falls back to centered differences with step dy.
    """
    x_beta = np.asarray(x_beta, dtype=float)
    beta_values = np.asarray(beta_values, dtype=float)
    if np.any(beta_values <= 0):
        raise ValueError("tabulated beta must be positive everywhere")
    nu_table = np.asarray(nu_table, dtype=float)
    if not np.isfinite(nu_table).all():
        raise ValueError("tabulated nu must be finite")

    interp = RegularGridInterpolator(
        (np.asarray(x_nu, dtype=float), np.asarray(y_nu, dtype=float)),
        nu_table,
        method='linear',
        bounds_error=False,
        fill_value=None,
    )

    def beta(x):
        return float(np.interp(x, x_beta, beta_values))

    def nu(x, y):
        y_arr = np.asarray(y, dtype=float)
        pts = np.stack([np.full(y_arr.shape, float(x)), y_arr], axis=-1)
        out = interp(pts.reshape(-1, 2)).reshape(y_arr.shape)
        return out if y_arr.ndim else float(out)

    return CoefficientModel(beta=beta, nu=nu, nu_y=centered_nu_y(nu, dy), name='tabulated')


def load_tabulated_coefficients(beta_csv: str, nu_csv: str, dy: float) -> CoefficientModel:
    """
    Load a tabulated medium from CSV files.

    beta_csv has header `x,beta`; nu_csv has header `x,y,nu` in row-major
    order (x outer, y inner).
    """
    beta_df = pd.read_csv(beta_csv)
    if list(beta_df.columns) != ['x', 'beta']:
        raise ValueError(f"{beta_csv}: expected header 'x,beta', got {','.join(beta_df.columns)}")
    beta_df = beta_df.sort_values('x')

    nu_df = pd.read_csv(nu_csv)
    if list(nu_df.columns) != ['x', 'y', 'nu']:
        raise ValueError(f"{nu_csv}: expected header 'x,y,nu', got {','.join(nu_df.columns)}")
    nu_df = nu_df.sort_values(['x', 'y'], kind='stable')
    x_nodes = np.unique(nu_df['x'].to_numpy())
    y_nodes = np.unique(nu_df['y'].to_numpy())
    if len(nu_df) != len(x_nodes) * len(y_nodes):
        raise ValueError(
            f"{nu_csv}: {len(nu_df)} rows do not form a full {len(x_nodes)}x{len(y_nodes)} grid"
        )
    table = nu_df['nu'].to_numpy().reshape(len(x_nodes), len(y_nodes))

    logger.info(
        f"COEFFS_LOADED | beta={beta_csv} nu={nu_csv} | "
        f"beta_nodes={len(beta_df)} nu_grid={len(x_nodes)}x{len(y_nodes)}"
    )
    return tabulated_coefficients(
        beta_df['x'].to_numpy(), beta_df['beta'].to_numpy(), x_nodes, y_nodes, table, dy
    )


# ============================================
# Exact solutions
# ============================================

@dataclass(frozen=True)
class GaussianBeamParams:
    """Beam with complex source offset x0 = -i a and tilt p."""
    a: float
    p: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"beam width parameter a must be positive, got {self.a}")

    @property
    def x0(self) -> complex:
        return -1j * self.a


@dataclass(frozen=True)
class PlaneWaveParams:
    k: float
    beta: float = 1.0
    nu: float = 0.0

    @property
    def omega(self) -> float:
        return self.nu - self.beta * self.k ** 2


def gaussian_beam(x, y, params: GaussianBeamParams):
    """
    Exact beam solution for beta = 1, nu = 0:
    sqrt(x0/(x+x0)) * exp(i (y^2 - p x0 (2y + p x)) / (4 (x + x0))).
    Principal square-root branch; x + x0 never crosses the negative real axis for x >= 0.
    """
    x0 = params.x0
    p = params.p
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = x + x0
    return np.sqrt(x0 / s) * np.exp(1j * (y ** 2 - p * x0 * (2.0 * y + p * x)) / (4.0 * s))


def initial_condition(y, params: GaussianBeamParams):
    """u(0, y) = exp(-y^2 / 4a) exp(-i p y / 2)"""
    y = np.asarray(y, dtype=float)
    return np.exp(-y ** 2 / (4.0 * params.a)) * np.exp(-0.5j * params.p * y)


def plane_wave(x, y, params: PlaneWaveParams):
    """exp(i (k y + omega x)) with omega = nu - beta k^2"""
    return np.exp(1j * (params.k * np.asarray(y, dtype=float)
                        + params.omega * np.asarray(x, dtype=float)))


def pde_residual(u: Callable, x: float, y: float, h: float,
                 coeffs: CoefficientModel) -> complex:
    """Centered-difference evaluation of i u_x + beta u_yy + nu u at (x, y)."""
    if not h > 0:
        raise ValueError(f"difference step must be positive, got {h}")
    u_c = u(x, y)
    u_x = (u(x + h, y) - u(x - h, y)) / (2.0 * h)
    u_yy = (u(x, y + h) - 2.0 * u_c + u(x, y - h)) / h ** 2
    return complex(1j * u_x + coeffs.beta(x) * u_yy + coeffs.nu(x, y) * u_c)


def beam_initial(params: GaussianBeamParams) -> Callable:
    return lambda y: initial_condition(y, params)
