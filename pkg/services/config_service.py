"""
Run Configuration Service
Strict JSON run files: preset expansion, per-field overrides, validation
with field paths, and the resolved form used for round-trips.

Example run file:
    {"preset": "narrow-beam", "bc": "abc0", "nx": 513, "ny": 513}
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from marching.boundary import BcKind, Stencil
from marching.errors import ConfigError
from marching.numerics import Grid2D, make_axis
from marching.phase import (
    HopfLaxSearch,
    hopf_lax_model,
    linear_initial_phase,
    plane_phase,
    quadratic_initial_phase,
)
from marching.physics import (
    GaussianBeamParams,
    beam_initial,
    benchmark_coefficients,
    constant_coefficients,
    load_tabulated_coefficients,
)
from marching.presets import PRESETS
from marching.stepper import SimulationConfig
from config import HOPF_LAX_N_COARSE, HOPF_LAX_SPAN, SNAPSHOT_EVERY

logger = logging.getLogger('config_service')

TOP_LEVEL_KEYS = {
    'preset', 'bc', 'nx', 'ny', 'x_max', 'y_min', 'y_max', 'beam', 'coefficients',
    'phase', 'snapshot_every', 'record_norms', 'boundary_stencil',
}
BEAM_KEYS = {'a', 'p'}
COEFFICIENT_KEYS = {
    'benchmark': set(),
    'constant': {'beta', 'nu'},
    'tabulated': {'beta_csv', 'nu_csv'},
}
PHASE_KEYS = {
    'plane': {'p', 'beta', 'nu'},
    'hopf-lax': {'initial', 'beta', 'xi_min', 'xi_max', 'n_coarse'},
}
INITIAL_PHASE_KEYS = {'linear': {'p'}, 'quadratic': {'c'}}


@dataclass
class RunSpec:
    """Fully resolved run file; every field explicit."""
    preset: str
    bc_lower: str
    bc_upper: str
    nx: int
    ny: int
    x_max: float
    y_min: float
    y_max: float
    beam_a: float
    beam_p: float
    coefficients: Dict[str, Any] = field(default_factory=dict)
    phase: Dict[str, Any] = field(default_factory=dict)
    snapshot_every: int = SNAPSHOT_EVERY
    record_norms: bool = True
    boundary_stencil: str = Stencil.HALF_CELL.value


# ============================================
# Field validation helpers
# ============================================

def _reject_unknown(data: Dict[str, Any], allowed, path: str):
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise ConfigError(f"unknown key (allowed: {', '.join(sorted(allowed)) or 'none'})", field=where)


def _object(value: Any, path: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError("expected an object", field=path)
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", field=path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", field=path)
    return value


def _boolean(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"expected true or false, got {value!r}", field=path)
    return value


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"expected a string, got {value!r}", field=path)
    return value


def _bc_name(value: Any, path: str) -> str:
    name = _string(value, path)
    try:
        BcKind.from_name(name)
    except ValueError as e:
        raise ConfigError(str(e), field=path) from e
    return name


# ============================================
# Resolution
# ============================================

def run_spec_from_dict(data: Dict[str, Any]) -> RunSpec:
    """
    Validate a run-file object and expand its preset.

    Raises:
        ConfigError: unknown keys, wrong types, missing fields
    """
    data = _object(data, 'config')
    _reject_unknown(data, TOP_LEVEL_KEYS, '')

    preset_name = _string(data.get('preset', 'custom'), 'preset')
    preset = None
    if preset_name != 'custom':
        if preset_name not in PRESETS:
            raise ConfigError(f"unknown preset '{preset_name}', expected one of {list(PRESETS)}",
                              field='preset')
        preset = PRESETS[preset_name]

    def pick(key: str, fallback: Optional[Any], convert):
        if key in data:
            return convert(data[key], key)
        if fallback is None:
            raise ConfigError("required when no preset supplies it", field=key)
        return fallback

    default_grid = max(preset.grids) if preset else None
    nx = pick('nx', default_grid, _integer)
    ny = pick('ny', default_grid, _integer)
    x_max = pick('x_max', preset.x_max if preset else None, _number)
    y_min = pick('y_min', preset.y_min if preset else None, _number)
    y_max = pick('y_max', preset.y_max if preset else None, _number)

    beam = _object(data.get('beam', {}), 'beam')
    _reject_unknown(beam, BEAM_KEYS, 'beam')
    beam_a = _number(beam['a'], 'beam.a') if 'a' in beam else (preset.beam.a if preset else None)
    beam_p = _number(beam['p'], 'beam.p') if 'p' in beam else (preset.beam.p if preset else None)
    if beam_a is None or beam_p is None:
        raise ConfigError("beam a and p are required without a preset", field='beam')
    if not beam_a > 0:
        raise ConfigError(f"must be positive, got {beam_a}", field='beam.a')

    if 'bc' not in data:
        raise ConfigError("boundary condition is required", field='bc')
    bc = data['bc']
    if isinstance(bc, dict):
        _reject_unknown(bc, {'lower', 'upper'}, 'bc')
        if set(bc) != {'lower', 'upper'}:
            raise ConfigError("needs both 'lower' and 'upper'", field='bc')
        bc_lower = _bc_name(bc['lower'], 'bc.lower')
        bc_upper = _bc_name(bc['upper'], 'bc.upper')
    else:
        bc_lower = bc_upper = _bc_name(bc, 'bc')

    coefficients = _resolve_coefficients(data.get('coefficients', {'kind': 'benchmark'}))
    phase = _resolve_phase(data.get('phase', {'kind': 'plane'}), coefficients, beam_p,
                           y_min, y_max)

    snapshot_every = _integer(data.get('snapshot_every', SNAPSHOT_EVERY), 'snapshot_every')
    if snapshot_every < 0:
        raise ConfigError("must be >= 0", field='snapshot_every')
    boundary_stencil = _string(data.get('boundary_stencil', Stencil.HALF_CELL.value),
                               'boundary_stencil')
    try:
        Stencil.from_name(boundary_stencil)
    except ValueError as e:
        raise ConfigError(str(e), field='boundary_stencil') from e

    return RunSpec(
        preset=preset_name,
        bc_lower=bc_lower,
        bc_upper=bc_upper,
        nx=nx,
        ny=ny,
        x_max=x_max,
        y_min=y_min,
        y_max=y_max,
        beam_a=beam_a,
        beam_p=beam_p,
        coefficients=coefficients,
        phase=phase,
        snapshot_every=snapshot_every,
        record_norms=_boolean(data.get('record_norms', True), 'record_norms'),
        boundary_stencil=boundary_stencil,
    )


def _resolve_coefficients(raw: Any) -> Dict[str, Any]:
    raw = _object(raw, 'coefficients')
    kind = _string(raw.get('kind', 'benchmark'), 'coefficients.kind')
    if kind not in COEFFICIENT_KEYS:
        raise ConfigError(f"unknown kind '{kind}', expected one of {list(COEFFICIENT_KEYS)}",
                          field='coefficients.kind')
    _reject_unknown(raw, COEFFICIENT_KEYS[kind] | {'kind'}, 'coefficients')

    if kind == 'benchmark':
        return {'kind': 'benchmark'}
    if kind == 'constant':
        beta = _number(raw.get('beta', 1.0), 'coefficients.beta')
        if not beta > 0:
            raise ConfigError(f"must be positive, got {beta}", field='coefficients.beta')
        return {'kind': 'constant', 'beta': beta, 'nu': _number(raw.get('nu', 0.0), 'coefficients.nu')}

    for key in ('beta_csv', 'nu_csv'):
        if key not in raw:
            raise ConfigError("required for tabulated coefficients", field=f'coefficients.{key}')
    return {
        'kind': 'tabulated',
        'beta_csv': _string(raw['beta_csv'], 'coefficients.beta_csv'),
        'nu_csv': _string(raw['nu_csv'], 'coefficients.nu_csv'),
    }


def _constant_medium(coefficients: Dict[str, Any], raw: Dict[str, Any], path: str):
    """beta, nu for analytic phases: explicit phase values, else the constant medium."""
    if coefficients['kind'] == 'benchmark':
        beta, nu = 1.0, 0.0
    elif coefficients['kind'] == 'constant':
        beta, nu = coefficients['beta'], coefficients['nu']
    else:
        beta = nu = None
    if 'beta' in raw:
        beta = _number(raw['beta'], f'{path}.beta')
    if 'nu' in raw:
        nu = _number(raw['nu'], f'{path}.nu')
    if beta is None or nu is None:
        raise ConfigError("beta and nu must be given for a tabulated medium", field=path)
    if not beta > 0:
        raise ConfigError(f"must be positive, got {beta}", field=f'{path}.beta')
    return beta, nu


def _resolve_phase(raw: Any, coefficients: Dict[str, Any], beam_p: float,
                   y_min: float, y_max: float) -> Dict[str, Any]:
    raw = _object(raw, 'phase')
    kind = _string(raw.get('kind', 'plane'), 'phase.kind')
    if kind not in PHASE_KEYS:
        raise ConfigError(f"unknown kind '{kind}', expected one of {list(PHASE_KEYS)}",
                          field='phase.kind')
    _reject_unknown(raw, PHASE_KEYS[kind] | {'kind'}, 'phase')

    if kind == 'plane':
        beta, nu = _constant_medium(coefficients, raw, 'phase')
        p = _number(raw.get('p', beam_p), 'phase.p')
        return {'kind': 'plane', 'p': p, 'beta': beta, 'nu': nu}

    beta, nu = _constant_medium(coefficients, {k: v for k, v in raw.items() if k == 'beta'}, 'phase')
    if nu != 0:
        raise ConfigError("Hopf-Lax phase supports nu = 0 only", field='phase.kind')

    initial = _object(raw.get('initial', {'kind': 'linear', 'p': beam_p}), 'phase.initial')
    initial_kind = _string(initial.get('kind', 'linear'), 'phase.initial.kind')
    if initial_kind not in INITIAL_PHASE_KEYS:
        raise ConfigError(f"unknown kind '{initial_kind}'", field='phase.initial.kind')
    _reject_unknown(initial, INITIAL_PHASE_KEYS[initial_kind] | {'kind'}, 'phase.initial')
    if initial_kind == 'linear':
        resolved_initial = {'kind': 'linear', 'p': _number(initial.get('p', beam_p), 'phase.initial.p')}
    else:
        if 'c' not in initial:
            raise ConfigError("required for a quadratic initial phase", field='phase.initial.c')
        resolved_initial = {'kind': 'quadratic', 'c': _number(initial['c'], 'phase.initial.c')}

    width = y_max - y_min
    xi_min = _number(raw.get('xi_min', y_min - HOPF_LAX_SPAN * width), 'phase.xi_min')
    xi_max = _number(raw.get('xi_max', y_max + HOPF_LAX_SPAN * width), 'phase.xi_max')
    n_coarse = _integer(raw.get('n_coarse', HOPF_LAX_N_COARSE), 'phase.n_coarse')
    if not xi_max > xi_min:
        raise ConfigError("must exceed phase.xi_min", field='phase.xi_max')
    if n_coarse < 3:
        raise ConfigError("must be at least 3", field='phase.n_coarse')
    return {
        'kind': 'hopf-lax', 'beta': beta, 'initial': resolved_initial,
        'xi_min': xi_min, 'xi_max': xi_max, 'n_coarse': n_coarse,
    }


def dump_run_spec(spec: RunSpec) -> Dict[str, Any]:
    """Run-file object that re-parses to the same RunSpec."""
    return {
        'preset': spec.preset,
        'bc': {'lower': spec.bc_lower, 'upper': spec.bc_upper},
        'nx': spec.nx,
        'ny': spec.ny,
        'x_max': spec.x_max,
        'y_min': spec.y_min,
        'y_max': spec.y_max,
        'beam': {'a': spec.beam_a, 'p': spec.beam_p},
        'coefficients': dict(spec.coefficients),
        'phase': json.loads(json.dumps(spec.phase)),
        'snapshot_every': spec.snapshot_every,
        'record_norms': spec.record_norms,
        'boundary_stencil': spec.boundary_stencil,
    }


# ============================================
# Building the simulation
# ============================================

def build_simulation_config(spec: RunSpec) -> SimulationConfig:
    """
    Raises:
        ConfigError: axes or coefficient files rejected, with the field path
    """
    try:
        x_axis = make_axis(0.0, spec.x_max, spec.nx)
    except ValueError as e:
        raise ConfigError(str(e), field='nx' if spec.nx < 3 else 'x_max') from e
    try:
        y_axis = make_axis(spec.y_min, spec.y_max, spec.ny)
    except ValueError as e:
        raise ConfigError(str(e), field='ny' if spec.ny < 3 else 'y_max') from e
    grid = Grid2D(x_axis, y_axis)

    c = spec.coefficients
    if c['kind'] == 'benchmark':
        coeffs = benchmark_coefficients()
    elif c['kind'] == 'constant':
        coeffs = constant_coefficients(c['beta'], c['nu'])
    else:
        for key in ('beta_csv', 'nu_csv'):
            if not os.path.exists(c[key]):
                raise ConfigError(f"file not found: {c[key]}", field=f'coefficients.{key}')
        try:
            coeffs = load_tabulated_coefficients(c['beta_csv'], c['nu_csv'], grid.dy)
        except (ValueError, KeyError) as e:
            raise ConfigError(str(e), field='coefficients') from e

    ph = spec.phase
    if ph['kind'] == 'plane':
        phase = plane_phase(ph['p'], ph['beta'], ph['nu'])
    else:
        init = ph['initial']
        theta_I = (linear_initial_phase(init['p']) if init['kind'] == 'linear'
                   else quadratic_initial_phase(init['c']))
        search = HopfLaxSearch(ph['xi_min'], ph['xi_max'], ph['n_coarse'])
        phase = hopf_lax_model(theta_I, ph['beta'], search, grid.dy)

    beam = GaussianBeamParams(a=spec.beam_a, p=spec.beam_p)
    return SimulationConfig(
        grid=grid,
        coeffs=coeffs,
        phase=phase,
        bc_lower=BcKind.from_name(spec.bc_lower),
        bc_upper=BcKind.from_name(spec.bc_upper),
        initial=beam_initial(beam),
        snapshot_every=spec.snapshot_every,
        record_norms=spec.record_norms,
        stencil=Stencil.from_name(spec.boundary_stencil),
        preset=spec.preset,
        spec=spec,
    )


def read_run_file(path: str) -> Dict[str, Any]:
    """Raw run-file object, before validation"""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}", field='config')
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}", field='config') from e
    return _object(data, 'config')


def load_run_spec(path: str) -> RunSpec:
    """
    Raises:
        ConfigError: missing file, invalid JSON, schema violation
    """
    spec = run_spec_from_dict(read_run_file(path))
    logger.info(f"CONFIG_LOADED | {path} | preset={spec.preset} bc={spec.bc_lower}/{spec.bc_upper}")
    return spec


def parse_config(path: str) -> SimulationConfig:
    return build_simulation_config(load_run_spec(path))
