"""
Numerics
Uniform axes, the strip grid, complex field slices, trapezoid quadrature
and the Thomas solver used by every march step.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numba import njit
from scipy.integrate import trapezoid

from config import PIVOT_FLOOR
from marching.errors import SingularSystemError

logger = logging.getLogger('numerics')


# ============================================
# Grids
# ============================================

@dataclass(frozen=True)
class Axis:
    """Uniform axis; `n` counts both endpoints."""
    min: float
    max: float
    n: int

    @property
    def step(self) -> float:
        return (self.max - self.min) / (self.n - 1)

    @cached_property
    def points(self) -> np.ndarray:
        # linspace writes `max` into the last slot exactly
        return np.linspace(self.min, self.max, self.n)

    def point(self, i: int) -> float:
        if i == self.n - 1:
            return self.max
        return self.min + i * self.step


def make_axis(min: float, max: float, n: int) -> Axis:
    """
    Build a uniform axis with n points including both endpoints.

    Raises:
        ValueError: n < 3 or max <= min
    """
    if int(n) != n or n < 3:
        raise ValueError(f"axis needs at least 3 points, got n={n}")
    if not max > min:
        raise ValueError(f"axis max must exceed min, got [{min}, {max}]")
    return Axis(float(min), float(max), int(n))


@dataclass(frozen=True)
class Grid2D:
    """Tensor grid of the strip [0, x_max] x [a, b]; x is the march direction."""
    x_axis: Axis
    y_axis: Axis

    @property
    def a(self) -> float:
        return self.y_axis.min

    @property
    def b(self) -> float:
        return self.y_axis.max

    @property
    def dx(self) -> float:
        return self.x_axis.step

    @property
    def dy(self) -> float:
        return self.y_axis.step

    @property
    def nx(self) -> int:
        return self.x_axis.n

    @property
    def ny(self) -> int:
        return self.y_axis.n


def make_grid(x_max: float, nx: int, y_min: float, y_max: float, ny: int) -> Grid2D:
    return Grid2D(make_axis(0.0, x_max, nx), make_axis(y_min, y_max, ny))


# ============================================
# Fields and systems
# ============================================

@dataclass
class ComplexField:
    """One range slice u(x_n, .) of the wavefield."""
    values: np.ndarray
    x_index: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.ndim != 1:
            raise ValueError(f"field must be one-dimensional, got shape {self.values.shape}")

    def __len__(self) -> int:
        return self.values.shape[0]

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values).all())

    def copy(self) -> 'ComplexField':
        return ComplexField(self.values.copy(), self.x_index)


@dataclass
class Tridiagonal:
    """lower[i] sits in row i+1, upper[i] in row i."""
    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.lower = np.asarray(self.lower, dtype=np.complex128)
        self.diag = np.asarray(self.diag, dtype=np.complex128)
        self.upper = np.asarray(self.upper, dtype=np.complex128)
        n = self.diag.shape[0]
        if n < 1 or self.lower.shape != (n - 1,) or self.upper.shape != (n - 1,):
            raise ValueError(
                f"inconsistent tridiagonal lengths: lower={self.lower.shape}, "
                f"diag={self.diag.shape}, upper={self.upper.shape}"
            )

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.upper * v[1:]
        out[1:] += self.lower * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.upper, 1) + np.diag(self.lower, -1)


# ============================================
# Quadrature
# ============================================

def trapezoid_abs2(field: ComplexField, step: float) -> float:
    """Trapezoid-rule approximation of the integral of |u|^2 over the axis."""
    if not field.is_finite():
        raise ValueError("cannot integrate a field with non-finite values")
    return float(trapezoid(np.abs(field.values) ** 2, dx=step))


# ============================================
# Thomas elimination
# ============================================

@njit(cache=True, nogil=True)
def _thomas_kernel(lower, diag, upper, rhs, out, floor):
    """Elimination without pivoting. Returns the failing row, or -1."""
    n = diag.shape[0]
    c = np.empty(n, dtype=np.complex128)
    d = np.empty(n, dtype=np.complex128)

    pivot = diag[0]
    if abs(pivot) < floor:
        return 0
    if n > 1:
        c[0] = upper[0] / pivot
    d[0] = rhs[0] / pivot

    for i in range(1, n):
        pivot = diag[i] - lower[i - 1] * c[i - 1]
        if abs(pivot) < floor:
            return i
        if i < n - 1:
            c[i] = upper[i] / pivot
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot

    out[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return -1


def thomas_solve(m: Tridiagonal, rhs: np.ndarray) -> np.ndarray:
    """
    Solve M v = rhs for tridiagonal M.

    Raises:
        ValueError: rhs length does not match M
        SingularSystemError: a pivot with modulus below PIVOT_FLOOR, naming its row
    """
    rhs = np.asarray(rhs, dtype=np.complex128)
    if rhs.shape != (m.n,):
        raise ValueError(f"rhs length {rhs.shape} does not match system size {m.n}")

    out = np.empty(m.n, dtype=np.complex128)
    failed_row = _thomas_kernel(m.lower, m.diag, m.upper, rhs, out, PIVOT_FLOOR)
    if failed_row >= 0:
        logger.error(f"THOMAS_ZERO_PIVOT | row={failed_row} | n={m.n}")
        raise SingularSystemError(int(failed_row))
    return out
