"""
Marching Package - Crank-Nicolson range marching with absorbing boundaries
"""
from .boundary import BC_NAMES, BcKind, boundary_row
from .diagnostics import EnergyReport, error_map, reference_run, reflected_energy_ratio
from .errors import (
    BoundaryConditionError,
    ConfigError,
    InstabilityError,
    MarchingError,
    NumericalError,
    ReferenceRunError,
    SingularSystemError,
)
from .stepper import SimulationConfig, SimulationResult, run, step

__all__ = [
    "BC_NAMES", "BcKind", "boundary_row",
    "EnergyReport", "error_map", "reference_run", "reflected_energy_ratio",
    "BoundaryConditionError", "ConfigError", "InstabilityError", "MarchingError",
    "NumericalError", "ReferenceRunError", "SingularSystemError",
    "SimulationConfig", "SimulationResult", "run", "step",
]
