"""
Phase Models
Solutions of the Hamilton-Jacobi equation theta_x + beta theta_y^2 - nu = 0
and the boundary wavenumber data k = theta_y, k_y, k_yy read by the ABC rows.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from config import HOPF_LAX_N_COARSE, HOPF_LAX_TOL
from marching.numerics import Axis

logger = logging.getLogger('phase')


class Side(Enum):
    LOWER = 'lower'
    UPPER = 'upper'

    @property
    def sign(self) -> int:
        """Outgoing direction: -1 at y = a, +1 at y = b."""
        return -1 if self is Side.LOWER else 1


@dataclass(frozen=True)
class PhaseModel:
    """
    theta(x, y) with k = theta_y and its y-derivatives.

    Numeric models carry the difference step used for k and its derivatives;
    boundary sampling switches to an inward-biased stencil for them.
    """
    theta: Callable
    k: Callable
    k_y: Callable
    k_yy: Callable
    name: str = 'custom'
    numeric: bool = False
    step: Optional[float] = None


@dataclass(frozen=True)
class InitialPhase:
    """Cauchy data theta(0, y) = theta_I(y), defined for all real y."""
    theta_I: Callable
    tag: str


@dataclass(frozen=True)
class HopfLaxSearch:
    xi_min: float
    xi_max: float
    n_coarse: int = HOPF_LAX_N_COARSE

    def __post_init__(self):
        if not self.xi_max > self.xi_min:
            raise ValueError(f"empty search interval [{self.xi_min}, {self.xi_max}]")
        if self.n_coarse < 3:
            raise ValueError(f"coarse scan needs at least 3 candidates, got {self.n_coarse}")


def linear_initial_phase(p: float) -> InitialPhase:
    """theta_I = -p y / 2, the phase of the tilted Gaussian beam"""
    return InitialPhase(lambda xi: -0.5 * p * np.asarray(xi, dtype=float), tag=f'linear(p={p:g})')


def quadratic_initial_phase(c: float) -> InitialPhase:
    return InitialPhase(lambda xi: c * np.asarray(xi, dtype=float) ** 2, tag=f'quadratic(c={c:g})')


# ============================================
# Analytic plane phase
# ============================================

def plane_phase(p: float, beta: float, nu: float) -> PhaseModel:
    """theta = -(p/2) y + (nu - beta p^2 / 4) x, constant k = -p/2"""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    k0 = -0.5 * p
    omega = nu - beta * p ** 2 / 4.0

    def theta(x, y):
        return k0 * np.asarray(y, dtype=float) + omega * np.asarray(x, dtype=float)

    def k(x, y):
        return np.full(np.shape(y), k0) if np.ndim(y) else k0

    def zero(x, y):
        return np.zeros(np.shape(y)) if np.ndim(y) else 0.0

    return PhaseModel(theta=theta, k=k, k_y=zero, k_yy=zero, name=f'plane(p={p:g})')


# ============================================
# Hopf-Lax numeric phase
# ============================================

def hopf_lax_phase(theta_I: InitialPhase, beta: float, x: float, y: float,
                   search: HopfLaxSearch, tol: float = HOPF_LAX_TOL) -> float:
    """
    theta(x, y) = min over xi of (y - xi)^2 / (4 beta x) + theta_I(xi)

    Coarse scan over `search.n_coarse` candidates, then golden-section
    refinement inside the bracketing cells.

    Raises:
        ValueError: x <= 0, beta <= 0, or the minimizer sits on the search edge
    """
    if not x > 0:
        raise ValueError(f"Hopf-Lax needs x > 0 (use theta_I directly at x = 0), got x={x}")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")

    def objective(xi):
        return (y - xi) ** 2 / (4.0 * beta * x) + theta_I.theta_I(xi)

    candidates = np.linspace(search.xi_min, search.xi_max, search.n_coarse)
    values = objective(candidates)
    i = int(np.argmin(values))
    if i == 0 or i == search.n_coarse - 1:
        raise ValueError(
            f"Hopf-Lax minimizer at the search edge xi={candidates[i]:.6g} for (x={x}, y={y}); "
            f"widen [{search.xi_min}, {search.xi_max}]"
        )

    bracket = (candidates[i - 1], candidates[i], candidates[i + 1])
    try:
        result = minimize_scalar(objective, bracket=bracket, method='golden', tol=tol)
    except ValueError:
        # tie with a neighbour: the coarse minimum is already flat to rounding
        return float(values[i])
    return float(min(result.fun, values[i]))


def hopf_lax_model(theta_I: InitialPhase, beta: float, search: HopfLaxSearch,
                   step: float) -> PhaseModel:
    """
    Numeric phase model: theta by Hopf-Lax, k and its derivatives by centered
    differences with the given y step. theta(0, y) falls back to theta_I.
    """
    def theta(x, y):
        if x <= 0:
            return float(theta_I.theta_I(y))
        return hopf_lax_phase(theta_I, beta, x, y, search)

    def k(x, y):
        return (theta(x, y + step) - theta(x, y - step)) / (2.0 * step)

    def k_y(x, y):
        return (k(x, y + step) - k(x, y - step)) / (2.0 * step)

    def k_yy(x, y):
        return (k(x, y + step) - 2.0 * k(x, y) + k(x, y - step)) / step ** 2

    logger.info(f"PHASE_MODEL | hopf-lax | theta_I={theta_I.tag} beta={beta} step={step:.4g}")
    return PhaseModel(theta=theta, k=k, k_y=k_y, k_yy=k_yy,
                      name=f'hopf-lax({theta_I.tag})', numeric=True, step=step)


# ============================================
# Boundary sampling
# ============================================

def boundary_wavenumber(model: PhaseModel, side: Side, x: float, y_axis: Axis) -> Dict[str, float]:
    """
    k, k_y, k_yy at the boundary ordinate of `side`.

    For numeric models the derivatives are centered one y-step inside the
    domain, so the stencil reads only k at the wall and two inward points.
    """
    y_b = y_axis.min if side is Side.LOWER else y_axis.max
    if not model.numeric:
        return {
            'k': float(model.k(x, y_b)),
            'k_y': float(model.k_y(x, y_b)),
            'k_yy': float(model.k_yy(x, y_b)),
        }

    h = model.step
    inward = -side.sign
    k_wall = model.k(x, y_b)
    k_in1 = model.k(x, y_b + inward * h)
    k_in2 = model.k(x, y_b + 2 * inward * h)
    return {
        'k': float(k_wall),
        'k_y': float(inward * (k_in2 - k_wall) / (2.0 * h)),
        'k_yy': float((k_wall - 2.0 * k_in1 + k_in2) / h ** 2),
    }
