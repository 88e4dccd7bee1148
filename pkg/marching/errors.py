"""
Error Types
Config errors map to CLI exit code 2, numerical aborts to exit code 3.
"""
from typing import Optional


class MarchingError(Exception):
    """Base class for solver errors"""


class ConfigError(MarchingError, ValueError):
    """Invalid run configuration; `field` is the dotted path of the offending key"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class BoundaryConditionError(ConfigError):
    """A boundary condition cannot be formed from the sampled coefficients"""


class NumericalError(MarchingError, RuntimeError):
    """The march could not be completed"""


class SingularSystemError(NumericalError):
    """Zero pivot during tridiagonal elimination"""

    def __init__(self, row: int, step: Optional[int] = None):
        self.row = row
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"singular tridiagonal system: zero pivot in row {row}{where}")


class InstabilityError(NumericalError):
    """Non-finite values appeared in the field"""

    def __init__(self, step: int, x: float):
        self.step = step
        self.x = x
        super().__init__(f"non-finite field values after step {step} (x={x:.6g})")


class ReferenceRunError(NumericalError):
    """The widened domain did not keep the field away from its walls"""


class DegenerateBoundaryWarning(RuntimeWarning):
    """A boundary condition degenerated (e.g. Pade-linear with vanishing potential)"""
