"""
Services Package
Run-file parsing, experiment orchestration, output writers and the run log.
"""

from services.config_service import RunSpec, build_simulation_config, load_run_spec, parse_config
from services.experiment_service import CellOutcome, ExperimentService
from services.output_service import OutputService
from services.run_logging import RunLogger, log_run

__all__ = [
    'RunSpec', 'build_simulation_config', 'load_run_spec', 'parse_config',
    'CellOutcome', 'ExperimentService',
    'OutputService',
    'RunLogger', 'log_run',
]
