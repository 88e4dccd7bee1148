"""
Experiment Service
Single runs, reference comparisons, grid x boundary-condition tables and
beam-width sweeps. Every finished run is appended to the run log.
"""
import dataclasses
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config import TABLE_WORKERS
from marching.diagnostics import EnergyReport, error_map, reference_run
from marching.errors import ConfigError, NumericalError
from marching.stepper import SimulationConfig, SimulationResult, run
from services.config_service import RunSpec, build_simulation_config, run_spec_from_dict
from services.run_logging import STATUS_CONFIG_ERROR, STATUS_NUMERICAL_ERROR, STATUS_OK, log_run

logger = logging.getLogger('experiment_service')


@dataclass
class CellOutcome:
    config: SimulationConfig
    result: SimulationResult
    reference: Optional[SimulationResult] = None
    error_map: Optional[np.ndarray] = None

    @property
    def reports(self) -> List[EnergyReport]:
        rows = [self.result.energy]
        if self.reference is not None:
            rows.append(self.reference.energy)
        return [r for r in rows if r is not None]


class ExperimentService:
    """Runs simulations and records them"""

    @staticmethod
    def simulate(config: SimulationConfig) -> SimulationResult:
        """run() with run-log bookkeeping on success and on failure"""
        grid = config.grid
        started = time.perf_counter()
        try:
            result = run(config)
        except ConfigError as e:
            log_run(preset=config.preset, bc=config.bc_label, nx=grid.nx, ny=grid.ny,
                    status=STATUS_CONFIG_ERROR, error=str(e),
                    elapsed_s=time.perf_counter() - started)
            raise
        except NumericalError as e:
            log_run(preset=config.preset, bc=config.bc_label, nx=grid.nx, ny=grid.ny,
                    status=STATUS_NUMERICAL_ERROR, error=str(e),
                    elapsed_s=time.perf_counter() - started)
            raise

        energy = result.energy
        log_run(
            preset=config.preset, bc=config.bc_label, nx=grid.nx, ny=grid.ny, status=STATUS_OK,
            e0=energy.e0 if energy else None,
            e_final=energy.e_final if energy else None,
            ratio=energy.ratio if energy else None,
            elapsed_s=time.perf_counter() - started,
        )
        return result

    @staticmethod
    def run_cell(spec: RunSpec, widen: Optional[float] = None, history: bool = False) -> CellOutcome:
        """
        One simulation; with `widen`, also the enlarged-domain reference
        and the error map against it. `history` keeps u at every x-step.
        """
        config = build_simulation_config(spec)
        if history:
            config = dataclasses.replace(config, record_history=True)
        result = ExperimentService.simulate(config)
        if widen is None:
            return CellOutcome(config=config, result=result)

        try:
            reference = reference_run(config, widen)
        except NumericalError as e:
            log_run(preset=config.preset, bc='reference', nx=config.grid.nx, ny=config.grid.ny,
                    status=STATUS_NUMERICAL_ERROR, error=str(e))
            raise
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError(str(e), field='widen') from e

        return CellOutcome(config=config, result=result, reference=reference,
                           error_map=error_map(result, reference))

    @staticmethod
    def run_table(preset: str, grids: Sequence[int], bcs: Sequence[str],
                  overrides: Optional[Dict[str, Any]] = None,
                  workers: int = TABLE_WORKERS) -> List[EnergyReport]:
        """
        grids x bcs energy rows, grid-major in the order given. Cells run
        concurrently; rows are assembled after all cells finish.
        """
        if not grids:
            raise ConfigError("at least one grid size is required", field='grids')
        if not bcs:
            raise ConfigError("at least one boundary condition is required", field='bcs')

        base = dict(overrides or {})
        specs = [
            run_spec_from_dict({**base, 'preset': preset, 'bc': bc, 'nx': g, 'ny': g})
            for g in grids for bc in bcs
        ]
        configs = [build_simulation_config(s) for s in specs]
        logger.info(f"TABLE_START | {preset} | cells={len(configs)} workers={workers}")

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            results = list(pool.map(ExperimentService.simulate, configs))

        reports = [r.energy for r in results if r.energy is not None]
        logger.info(f"TABLE_DONE | {preset} | rows={len(reports)}")
        return reports

    @staticmethod
    def run_sweep(preset: str, bc: str, widths: Sequence[float],
                  overrides: Optional[Dict[str, Any]] = None) -> List[EnergyReport]:
        """Rerun a preset at each beam width a; rows are labelled `<preset>:a=<a>`."""
        if not widths:
            raise ConfigError("at least one beam width is required", field='widths')

        reports = []
        for a in widths:
            base = dict(overrides or {})
            beam = dict(base.pop('beam', {}))
            beam['a'] = a
            spec = run_spec_from_dict({**base, 'preset': preset, 'bc': bc, 'beam': beam})
            config = dataclasses.replace(build_simulation_config(spec), preset=f"{preset}:a={a:g}")
            result = ExperimentService.simulate(config)
            if result.energy is not None:
                reports.append(result.energy)
        return reports
