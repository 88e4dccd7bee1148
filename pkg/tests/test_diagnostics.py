import numpy as np
import pytest

from marching.boundary import BcKind
from marching.diagnostics import (
    ENERGY_CSV_COLUMNS,
    EnergyReport,
    error_map,
    reference_run,
    reflected_energy_ratio,
    widened_grid,
)
from marching.errors import ReferenceRunError
from marching.numerics import ComplexField, make_grid
from marching.phase import plane_phase
from marching.physics import GaussianBeamParams, beam_initial, benchmark_coefficients, gaussian_beam
from marching.presets import PRESETS
from marching.stepper import SimulationConfig, run

BEAM = GaussianBeamParams(a=1.0, p=2.0)


def _config(bc=BcKind.ZEROTH_ORDER, nx=101, ny=161, x_max=0.5, y_min=-4.0, y_max=4.0,
            beam=BEAM, initial=None, **kw):
    return SimulationConfig(
        grid=make_grid(x_max, nx, y_min, y_max, ny),
        coeffs=benchmark_coefficients(),
        phase=plane_phase(beam.p, 1.0, 0.0),
        bc_lower=bc,
        bc_upper=bc,
        initial=initial or beam_initial(beam),
        **kw,
    )


class TestEnergyRatio:
    def test_identical_fields(self):
        u = ComplexField(np.exp(-np.linspace(-3, 3, 61) ** 2))
        report = reflected_energy_ratio(u, u.copy(), 0.1)
        assert report.ratio == 1.0
        assert report.e0 == report.e_final

    def test_zero_final_field(self):
        u = ComplexField(np.ones(11))
        assert reflected_energy_ratio(u, ComplexField(np.zeros(11)), 0.1).ratio == 0.0

    def test_zero_initial_energy(self):
        with pytest.raises(ValueError):
            reflected_energy_ratio(ComplexField(np.zeros(5)), ComplexField(np.ones(5)), 0.1)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            reflected_energy_ratio(ComplexField(np.ones(5)), ComplexField(np.ones(6)), 0.1)

    def test_csv_row(self):
        report = EnergyReport(e0=2.0, e_final=1e-4, ratio=5e-5, preset='narrow-beam', bc='abc0',
                              nx=513, ny=513)
        assert list(report.to_row()) == ENERGY_CSV_COLUMNS
        assert report.grid_label == '513x513'


class TestWidenedGrid:
    def test_original_points_reappear(self):
        grid = make_grid(0.15, 33, -2.0, 2.0, 65)
        wide, pad = widened_grid(grid, 8.0)
        assert pad == 224
        assert wide.ny == 65 + 2 * pad
        assert wide.dy == pytest.approx(grid.dy, rel=1e-12)
        np.testing.assert_allclose(wide.y_axis.points[pad:pad + 65], grid.y_axis.points,
                                   rtol=0, atol=1e-12)
        assert wide.x_axis == grid.x_axis

    def test_factor_below_two(self):
        with pytest.raises(ValueError):
            widened_grid(make_grid(1.0, 5, 0.0, 1.0, 5), 1.5)


class TestReferenceRun:
    def test_matches_exact_beam(self):
        config = _config()
        reference = reference_run(config, 4.0)
        exact = gaussian_beam(config.grid.x_axis.max, config.grid.y_axis.points, BEAM)
        assert len(reference.final_field) == config.grid.ny
        assert np.max(np.abs(reference.final_field.values - exact)) < 5e-3
        assert reference.energy.bc == 'reference'

    def test_edge_check(self):
        config = _config(y_min=-1.0, y_max=1.0, ny=41)
        with pytest.raises(ReferenceRunError):
            reference_run(config, 2.0)

    def test_zero_initial_data(self):
        reference = reference_run(_config(initial=lambda y: np.zeros_like(y)), 2.0)
        assert not reference.final_field.values.any()
        assert reference.energy is None

    def test_does_not_touch_original_walls(self):
        config = _config(bc=BcKind.FIRST_ORDER)
        reference_run(config, 4.0)
        assert config.bc_lower is BcKind.FIRST_ORDER
        assert config.grid.ny == 161


class TestErrorMap:
    def test_self_comparison_is_zero(self):
        result = run(_config(snapshot_every=10))
        emap = error_map(result, result)
        assert emap.shape == (len(result.snapshots), 161)
        assert not emap.any()

    def test_snapshot_mismatch(self):
        a = run(_config(snapshot_every=10))
        b = run(_config(snapshot_every=20))
        with pytest.raises(ValueError):
            error_map(a, b)

    def test_dirichlet_errors_exceed_absorbing_errors(self):
        preset = PRESETS['wide-beam']

        def preset_config(bc):
            return _config(bc=bc, nx=257, ny=257, x_max=preset.x_max, y_min=preset.y_min,
                           y_max=preset.y_max, beam=preset.beam, preset=preset.name)

        reference = reference_run(preset_config(BcKind.DIRICHLET), preset.widen_factor)
        dirichlet = error_map(run(preset_config(BcKind.DIRICHLET)), reference)
        absorbing = error_map(run(preset_config(BcKind.ZEROTH_ORDER)), reference)
        assert dirichlet[-1].max() > 0.1
        assert absorbing[-1].max() < 0.3 * dirichlet[-1].max()


class TestReflectionLevels:
    """Energy left in the narrow-beam window after the beam has crossed the lower wall."""

    @staticmethod
    def _narrow(bc, n=513, a=None):
        preset = PRESETS['narrow-beam']
        beam = GaussianBeamParams(a=a, p=preset.beam.p) if a is not None else preset.beam
        return run(_config(bc=bc, nx=n, ny=n, x_max=preset.x_max, y_min=preset.y_min,
                           y_max=preset.y_max, beam=beam, preset=preset.name)).energy.ratio

    def test_wider_beams_reflect_less(self):
        ratios = [self._narrow(BcKind.ZEROTH_ORDER, a=a) for a in (1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0)]
        assert ratios[0] > ratios[1] > ratios[2]

    def test_dirichlet_keeps_three_orders_more_energy(self):
        dirichlet = self._narrow(BcKind.DIRICHLET)
        absorbing = max(self._narrow(BcKind.ZEROTH_ORDER), self._narrow(BcKind.FIRST_ORDER))
        assert dirichlet >= 1e3 * absorbing
