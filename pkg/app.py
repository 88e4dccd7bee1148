"""
Flask Web Application for the ABC marching solver
Provides API endpoints for presets, single runs and comparison tables
"""
import logging

from flask import Flask, jsonify, request
from flask_cors import CORS

from config import API_PORT, FRONTEND_URL, LOG_LEVEL
from marching.boundary import BC_NAMES
from marching.errors import ConfigError, NumericalError
from marching.presets import PRESETS, PUBLISHED_RATIOS, get_preset
from services.config_service import dump_run_spec, run_spec_from_dict
from services.experiment_service import ExperimentService

logging.basicConfig(level=LOG_LEVEL, format='%(asctime)s %(name)s %(levelname)s %(message)s')
logger = logging.getLogger('app')

app = Flask(__name__)

# Configure CORS for the plotting frontend
CORS(app,
     resources={r"/api/*": {"origins": [FRONTEND_URL]}},
     allow_headers=["Content-Type"],
     methods=["GET", "POST", "OPTIONS"])


def _error(e: Exception, code: int):
    body = {'success': False, 'error': str(e)}
    field = getattr(e, 'field', None)
    if field:
        body['field'] = field
    return jsonify(body), code


def _json_body():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise ConfigError("request body must be a JSON object", field='body')
    return data


# ============================================
# Endpoints
# ============================================

@app.route('/api/health', methods=['GET'])
def health():
    return jsonify({'success': True, 'status': 'ok'})


@app.route('/api/presets', methods=['GET'])
def list_presets():
    presets = [
        {
            'name': p.name,
            'beam': {'a': p.beam.a, 'p': p.beam.p},
            'x_max': p.x_max,
            'y_min': p.y_min,
            'y_max': p.y_max,
            'grids': list(p.grids),
            'widen_factor': p.widen_factor,
            'published': [
                {'grid': g, 'bc': bc, 'ratio': ratio}
                for (g, bc), ratio in sorted(PUBLISHED_RATIOS.get(p.name, {}).items())
            ],
        }
        for p in PRESETS.values()
    ]
    return jsonify({'success': True, 'presets': presets, 'boundary_conditions': BC_NAMES})


@app.route('/api/run', methods=['POST'])
def run_simulation():
    """Body is a run file plus an optional `widen` factor"""
    try:
        data = _json_body()
        widen = data.pop('widen', None)
        if widen is not None and (isinstance(widen, bool) or not isinstance(widen, (int, float))):
            raise ConfigError(f"expected a number, got {widen!r}", field='widen')
        spec = run_spec_from_dict(data)
        outcome = ExperimentService.run_cell(spec, widen=widen)

        result = outcome.result
        return jsonify({
            'success': True,
            'config': dump_run_spec(spec),
            'report': result.energy.to_row() if result.energy else None,
            'reference': (outcome.reference.energy.to_row()
                          if outcome.reference is not None and outcome.reference.energy else None),
            'max_error': float(outcome.error_map.max()) if outcome.error_map is not None else None,
            'norm_history': [[x, e] for x, e in result.norm_history],
        })
    except ConfigError as e:
        return _error(e, 400)
    except NumericalError as e:
        return _error(e, 422)
    except ValueError as e:
        return _error(e, 400)
    except Exception as e:
        logger.exception(f"API_RUN_FAILED | {e}")
        return _error(e, 500)


@app.route('/api/table', methods=['POST'])
def run_table():
    """Body: {"preset": ..., "grids": [...], "bcs": [...]}"""
    try:
        data = _json_body()
        preset = data.get('preset')
        if not isinstance(preset, str):
            raise ConfigError("preset name is required", field='preset')
        try:
            grids = data.get('grids') or get_preset(preset).grids
        except ValueError as e:
            raise ConfigError(str(e), field='preset') from e
        bcs = data.get('bcs') or ['abc0', 'abc1']
        if not isinstance(grids, list) or not isinstance(bcs, list):
            raise ConfigError("grids and bcs must be lists", field='grids')

        reports = ExperimentService.run_table(preset, grids, bcs)
        return jsonify({'success': True, 'rows': [r.to_row() for r in reports]})
    except ConfigError as e:
        return _error(e, 400)
    except NumericalError as e:
        return _error(e, 422)
    except ValueError as e:
        return _error(e, 400)
    except Exception as e:
        logger.exception(f"API_TABLE_FAILED | {e}")
        return _error(e, 500)


if __name__ == '__main__':
    print("=" * 60)
    print("  ABC Marching Solver - Experiment API")
    print("=" * 60)
    print(f"\n🌐 Starting server at: http://localhost:{API_PORT}")
    print("📝 Press Ctrl+C to stop the server\n")
    print("=" * 60)

    app.run(debug=False, use_reloader=False, host='0.0.0.0', port=API_PORT)
