"""
Experiment Runner for the ABC marching solver
Runs single simulations, grid x boundary-condition tables and beam-width sweeps

Usage:
    python scripts/run_experiment.py run --preset narrow-beam --bc abc0 --nx 1025 --ny 1025 --out out/
    python scripts/run_experiment.py run --config runs/narrow.json --widen 8 --out out/
    python scripts/run_experiment.py table --preset narrow-beam --grids 513,1025 --bcs abc0,abc1
    python scripts/run_experiment.py sweep --preset wide-beam --bc abc1 --widths 0.5,1,2,4

Exit codes: 0 success, 2 configuration error, 3 numerical abort.
"""
import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import LOG_LEVEL, OUTPUT_DIR, TABLE_WORKERS
from marching.boundary import BC_NAMES
from marching.errors import ConfigError, NumericalError
from marching.presets import PRESET_NAMES, get_preset
from services.config_service import read_run_file, run_spec_from_dict
from services.experiment_service import ExperimentService
from services.output_service import OutputService

logger = logging.getLogger('run_experiment')

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _name_list(text: str) -> List[str]:
    names = [v.strip() for v in text.split(',') if v.strip()]
    for name in names:
        if name not in BC_NAMES:
            raise argparse.ArgumentTypeError(f"unknown boundary condition '{name}'")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Crank-Nicolson marching with absorbing boundaries')
    sub = parser.add_subparsers(dest='command', required=True)

    run_p = sub.add_parser('run', help='Run one simulation')
    run_p.add_argument('--config', help='JSON run file; flags override its fields')
    run_p.add_argument('--preset', choices=PRESET_NAMES, help='Compiled-in experiment')
    run_p.add_argument('--bc', choices=BC_NAMES, help='Boundary condition on both walls')
    run_p.add_argument('--nx', type=int, help='Points along x, endpoints included')
    run_p.add_argument('--ny', type=int, help='Points along y, endpoints included')
    run_p.add_argument('--snapshot-every', type=int, help='Keep the field every N steps')
    run_p.add_argument('--widen', type=float, help='Also run the enlarged-domain reference')
    run_p.add_argument('--out', default=OUTPUT_DIR, help='Output directory')

    table_p = sub.add_parser('table', help='Energy ratios for every grid x boundary condition')
    table_p.add_argument('--preset', choices=PRESET_NAMES, required=True)
    table_p.add_argument('--grids', type=_int_list, help='Grid sizes, e.g. 513,1025')
    table_p.add_argument('--bcs', type=_name_list, default=['abc0', 'abc1'],
                         help='Boundary conditions, e.g. abc0,abc1')
    table_p.add_argument('--workers', type=int, default=TABLE_WORKERS)
    table_p.add_argument('--out', default=OUTPUT_DIR)

    sweep_p = sub.add_parser('sweep', help='Rerun a preset over beam widths a')
    sweep_p.add_argument('--preset', choices=PRESET_NAMES, required=True)
    sweep_p.add_argument('--bc', choices=BC_NAMES, required=True)
    sweep_p.add_argument('--widths', type=_float_list, required=True, help='e.g. 0.5,1,2')
    sweep_p.add_argument('--nx', type=int)
    sweep_p.add_argument('--ny', type=int)
    sweep_p.add_argument('--out', default=OUTPUT_DIR)

    return parser


def _overrides(args: argparse.Namespace, keys) -> Dict[str, Any]:
    found = {}
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            found[key] = value
    return found


def cmd_run(args: argparse.Namespace) -> None:
    data = read_run_file(args.config) if args.config else {}
    data.update(_overrides(args, ['preset', 'bc', 'nx', 'ny', 'snapshot_every']))
    spec = run_spec_from_dict(data)

    outcome = ExperimentService.run_cell(spec, widen=args.widen, history=True)
    reports = outcome.reports
    if reports:
        OutputService.write_energy_csv(reports, args.out)
    OutputService.write_field_csv(outcome.result.snapshots, outcome.config.grid.y_axis.points, args.out,
                                  history=outcome.result.history)
    if outcome.error_map is not None:
        OutputService.write_error_map(outcome.error_map, args.out)
    print(OutputService.format_energy_rows(reports), end='')


def cmd_table(args: argparse.Namespace) -> None:
    grids = args.grids or get_preset(args.preset).grids
    reports = ExperimentService.run_table(args.preset, grids, args.bcs, workers=args.workers)
    OutputService.write_energy_csv(reports, args.out)
    print(OutputService.format_energy_rows(reports), end='')


def cmd_sweep(args: argparse.Namespace) -> None:
    reports = ExperimentService.run_sweep(args.preset, args.bc, args.widths,
                                          overrides=_overrides(args, ['nx', 'ny']))
    OutputService.write_energy_csv(reports, args.out, filename='sweep.csv')
    print(OutputService.format_energy_rows(reports), end='')


COMMANDS = {'run': cmd_run, 'table': cmd_table, 'sweep': cmd_sweep}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format='%(asctime)s %(name)s %(levelname)s %(message)s')
    args = build_parser().parse_args(argv)

    try:
        COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        print(f"❌ Numerical abort: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as e:
        print(f"❌ Invalid input: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
