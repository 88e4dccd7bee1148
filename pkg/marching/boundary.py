"""
Boundary Rows
Each boundary-condition family becomes the linear closure that occupies the
first or last row of the Crank-Nicolson system at one x-step.

All absorbing rows share one discretization of
    A u_x + B u_xy + C u_y + D u = 0
at the wall J with inward neighbours M, M2:
    u_x  -> (P u^{n+1} - P u^n) / dx
    u_xy -> (D_y u^{n+1} - D_y u^n) / dx
    u_y  -> (D_y u^{n+1} + D_y u^n) / 2
    u    -> (P u^{n+1} + P u^n) / 2
The default half-cell stencil centres the row at y_{J-+1/2} with
P u = (u_J + u_M) / 2 and D_y u = s (u_J - u_M) / dy, second order in dy.
The wall-centred stencils keep P u = u_J and take D_y one-sided over two
or three points.
"""
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, NamedTuple, Tuple

from marching.errors import BoundaryConditionError, DegenerateBoundaryWarning
from marching.phase import Side


class BcKind(Enum):
    DIRICHLET = 'dirichlet'
    ZEROTH_ORDER = 'abc0'
    FIRST_ORDER = 'abc1'
    KUSKA = 'kuska'
    PADE_LINEAR = 'pade-linear'

    @classmethod
    def from_name(cls, name: str) -> 'BcKind':
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown boundary condition '{name}', expected one of {BC_NAMES}")


BC_NAMES = [kind.value for kind in BcKind]


class Stencil(Enum):
    HALF_CELL = 'half-cell'
    TWO_POINT = 'two-point'
    THREE_POINT = 'three-point'

    @classmethod
    def from_name(cls, name: str) -> 'Stencil':
        for stencil in cls:
            if stencil.value == name:
                return stencil
        raise ValueError(f"unknown boundary stencil '{name}', expected one of {STENCIL_NAMES}")


STENCIL_NAMES = [stencil.value for stencil in Stencil]


@dataclass(frozen=True)
class BoundaryRow:
    """
    new_coeffs multiply u^{n+1} at the wall, then its 1-2 inward neighbours;
    rhs is assembled from u^n.
    """
    new_coeffs: Tuple[complex, ...]
    rhs: complex

    def __post_init__(self):
        if not 1 <= len(self.new_coeffs) <= 3:
            raise ValueError(f"boundary row needs 1-3 coefficients, got {len(self.new_coeffs)}")
        if self.new_coeffs[0] == 0:
            raise ValueError("boundary row has a zero wall coefficient")


@dataclass(frozen=True)
class BoundaryContext:
    """
    Everything a row needs at one wall, sampled at x_{n+1/2}.
    u_old lists u^n at the wall and its two inward neighbours.
    """
    side: Side
    beta: float
    nu: float
    nu_y: float
    k: float
    k_y: float
    k_yy: float
    dx: float
    dy: float
    u_old: Tuple[complex, complex, complex]
    stencil: Stencil = Stencil.HALF_CELL

    def __post_init__(self):
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError(f"steps must be positive, got dx={self.dx}, dy={self.dy}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not isinstance(self.stencil, Stencil):
            raise ValueError(f"stencil must be a Stencil, got {self.stencil!r}")

    def outgoing(self) -> Tuple[float, float, float]:
        """
        Signed outgoing wavenumber k_out = s|k| with its y-derivatives,
        s = -1 at y = a and +1 at y = b. |k|_y = sign(k) k_y; both
        derivatives are taken as 0 at k = 0.
        """
        s = self.side.sign
        abs_k = abs(self.k)
        if self.k == 0:
            return 0.0, 0.0, 0.0
        sgn = 1.0 if self.k > 0 else -1.0
        return s * abs_k, s * sgn * self.k_y, s * sgn * self.k_yy

    def dy_weights(self) -> Tuple[float, ...]:
        """Weights of D_y ~ d/dy on (u_J, u_M[, u_M2])."""
        g = float(self.side.sign)
        if self.stencil is Stencil.THREE_POINT:
            return (1.5 * g / self.dy, -2.0 * g / self.dy, 0.5 * g / self.dy)
        return (g / self.dy, -g / self.dy)

    def point_weights(self) -> Tuple[float, ...]:
        """Weights of P u, the value the u and u_x terms act on."""
        if self.stencil is Stencil.HALF_CELL:
            return (0.5, 0.5)
        return (1.0,)


class BoundaryOperator(NamedTuple):
    """Continuous closure A u_x + B u_xy + C u_y + D u = 0 at one wall."""
    A: complex
    B: complex
    C: complex
    D: complex

    def apply_plane_wave(self, k: float, omega: float) -> complex:
        """Operator symbol on exp(i(k y + omega x)); zero when the wave is annihilated."""
        return complex(self.A * 1j * omega - self.B * omega * k + self.C * 1j * k + self.D)


def discretize(ctx: BoundaryContext, op: BoundaryOperator) -> BoundaryRow:
    """Discretize the operator per the module scheme."""
    w = ctx.dy_weights()
    p = ctx.point_weights() + (0.0,) * (len(w) - len(ctx.point_weights()))
    new = []
    rhs = 0j
    for m, weight in enumerate(w):
        new_m = (op.B / ctx.dx + op.C / 2.0) * weight + (op.A / ctx.dx + op.D / 2.0) * p[m]
        old_m = (op.B / ctx.dx - op.C / 2.0) * weight + (op.A / ctx.dx - op.D / 2.0) * p[m]
        new.append(complex(new_m))
        rhs += old_m * ctx.u_old[m]
    return BoundaryRow(new_coeffs=tuple(new), rhs=complex(rhs))


# ============================================
# Operators
# ============================================

def zeroth_order_operator(ctx: BoundaryContext) -> BoundaryOperator:
    """
    u_x + 2 beta k_out u_y - i beta k^2 u + beta k_out_y u - i nu u = 0,
    i.e. u_x -+ 2 beta |k| u_y - i beta k^2 u -+ beta |k|_y u - i nu u = 0 at y = a / y = b.
    """
    k_out, k_out_y, _ = ctx.outgoing()
    beta = ctx.beta
    return BoundaryOperator(
        A=1.0,
        B=0.0,
        C=2.0 * beta * k_out,
        D=-1j * beta * ctx.k ** 2 + beta * k_out_y - 1j * ctx.nu,
    )


def kuska_operator(ctx: BoundaryContext) -> BoundaryOperator:
    """i (nu + 3 beta k^2) u_y - u_xy -+ 3i|k| u_x -+ |k| (beta k^2 + 3 nu) u = 0"""
    k_out, _, _ = ctx.outgoing()
    beta, nu, k2 = ctx.beta, ctx.nu, ctx.k ** 2
    return BoundaryOperator(
        A=3j * k_out,
        B=-1.0,
        C=1j * (nu + 3.0 * beta * k2),
        D=k_out * (beta * k2 + 3.0 * nu) + 0j,
    )


def first_order_operator(ctx: BoundaryContext) -> BoundaryOperator:
    """
    The rational-linear operator plus the variable-coefficient corrections
    i nu_y u - beta k_out_yy u - 3i beta k_out k_out_y u - 6 beta k_out_y u_y.
    """
    A, B, C, D = kuska_operator(ctx)
    k_out, k_out_y, k_out_yy = ctx.outgoing()
    beta = ctx.beta
    return BoundaryOperator(
        A=A,
        B=B,
        C=C - 6.0 * beta * k_out_y,
        D=D + (1j * ctx.nu_y - beta * k_out_yy - 3j * beta * k_out * k_out_y),
    )


def pade_linear_operator(ctx: BoundaryContext) -> BoundaryOperator:
    """
    u_x + 2 s sqrt(beta nu) u_y - 2i nu u = 0 (s = -1 at y = a, +1 at y = b).

    Raises:
        BoundaryConditionError: nu < 0 at the wall
    """
    nu = ctx.nu
    if nu < 0:
        raise BoundaryConditionError(
            f"Pade-linear condition needs nu >= 0 at the {ctx.side.value} wall, got nu={nu}",
            field='bc',
        )
    if nu == 0:
        warnings.warn(
            f"Pade-linear condition at the {ctx.side.value} wall has nu = 0 and reduces to u_x = 0",
            DegenerateBoundaryWarning,
            stacklevel=3,
        )
    return BoundaryOperator(
        A=1.0,
        B=0.0,
        C=2.0 * ctx.side.sign * math.sqrt(ctx.beta * nu),
        D=-2j * nu,
    )


# ============================================
# Row builders
# ============================================

def dirichlet_row(ctx: BoundaryContext) -> BoundaryRow:
    """u^{n+1} = 0 at the wall"""
    return BoundaryRow(new_coeffs=(1.0 + 0j,), rhs=0j)


def zeroth_order_row(ctx: BoundaryContext) -> BoundaryRow:
    return discretize(ctx, zeroth_order_operator(ctx))


def kuska_row(ctx: BoundaryContext) -> BoundaryRow:
    return discretize(ctx, kuska_operator(ctx))


def first_order_row(ctx: BoundaryContext) -> BoundaryRow:
    """With k_y = k_yy = nu_y = 0 it equals kuska_row bit for bit."""
    return discretize(ctx, first_order_operator(ctx))


def pade_linear_row(ctx: BoundaryContext) -> BoundaryRow:
    return discretize(ctx, pade_linear_operator(ctx))


ROW_BUILDERS: Dict[BcKind, Callable[[BoundaryContext], BoundaryRow]] = {
    BcKind.DIRICHLET: dirichlet_row,
    BcKind.ZEROTH_ORDER: zeroth_order_row,
    BcKind.FIRST_ORDER: first_order_row,
    BcKind.KUSKA: kuska_row,
    BcKind.PADE_LINEAR: pade_linear_row,
}


def boundary_row(kind: BcKind, ctx: BoundaryContext) -> BoundaryRow:
    return ROW_BUILDERS[kind](ctx)
