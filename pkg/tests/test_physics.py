import numpy as np
import pandas as pd
import pytest
from scipy.integrate import quad

from marching.numerics import ComplexField, make_axis, trapezoid_abs2
from marching.physics import (
    GaussianBeamParams,
    PlaneWaveParams,
    benchmark_coefficients,
    constant_coefficients,
    gaussian_beam,
    initial_condition,
    load_tabulated_coefficients,
    pde_residual,
    plane_wave,
)


class TestGaussianBeam:
    def test_matches_initial_condition_at_origin(self):
        params = GaussianBeamParams(a=1.0 / 16.0, p=40.0)
        y = np.linspace(-2.0, 2.0, 257)
        np.testing.assert_allclose(gaussian_beam(0.0, y, params), initial_condition(y, params),
                                   rtol=0, atol=1e-14)

    @pytest.mark.parametrize("x,y", [(0.1, 0.0), (0.3, -0.7), (0.9, -3.5)])
    def test_solves_benchmark_equation(self, x, y):
        params = GaussianBeamParams(a=2.0, p=5.0)
        u = lambda xx, yy: gaussian_beam(xx, yy, params)
        res = pde_residual(u, x, y, 1e-4, benchmark_coefficients())
        assert abs(res) < 1e-5

    def test_centre_drifts_with_group_velocity(self):
        params = GaussianBeamParams(a=2.0, p=5.0)
        y = np.linspace(-10.0, 10.0, 4001)
        amp = np.abs(gaussian_beam(1.0, y, params))
        # transverse group velocity 2 beta k = -p
        assert y[np.argmax(amp)] == pytest.approx(-5.0, abs=0.01)

    def test_width_must_be_positive(self):
        with pytest.raises(ValueError):
            GaussianBeamParams(a=0.0, p=1.0)

    def test_parity_at_origin(self):
        """|u(0, y)| is even and arg u(0, y) is odd, i.e. u(0, -y) = conj u(0, y)."""
        params = GaussianBeamParams(a=1.0 / 16.0, p=40.0)
        y = np.linspace(0.0, 2.0, 129)
        u_pos = gaussian_beam(0.0, y, params)
        u_neg = gaussian_beam(0.0, -y, params)
        np.testing.assert_allclose(np.abs(u_neg), np.abs(u_pos), rtol=0, atol=1e-12)
        np.testing.assert_allclose(u_neg, np.conj(u_pos), rtol=0, atol=1e-12)

    def test_narrow_beam_energy_matches_quadrature(self):
        params = GaussianBeamParams(a=1.0 / 16.0, p=40.0)
        axis = make_axis(-2.0, 2.0, 1025)
        field = ComplexField(initial_condition(axis.points, params))
        exact, _ = quad(lambda y: np.exp(-y ** 2 / (2.0 * params.a)), -2.0, 2.0,
                        epsabs=1e-13, epsrel=1e-13)
        assert trapezoid_abs2(field, axis.step) == pytest.approx(exact, abs=1e-8)


class TestPlaneWave:
    def test_residual_vanishes(self):
        params = PlaneWaveParams(k=1.3, beta=1.5, nu=0.7)
        coeffs = constant_coefficients(1.5, 0.7)
        u = lambda x, y: plane_wave(x, y, params)
        assert abs(pde_residual(u, 0.2, 0.4, 1e-4, coeffs)) < 1e-6

    def test_residual_is_second_order(self):
        """Richardson check of the centered differences on an exact solution."""
        params = PlaneWaveParams(k=1.3, beta=1.5, nu=0.7)
        coeffs = constant_coefficients(1.5, 0.7)
        u = lambda x, y: plane_wave(x, y, params)
        residuals = [abs(pde_residual(u, 0.2, 0.4, h, coeffs)) for h in (0.04, 0.02, 0.01)]
        for coarse, fine in zip(residuals, residuals[1:]):
            assert 1.8 <= np.log2(coarse / fine) <= 2.2

    def test_omega(self):
        assert PlaneWaveParams(k=2.0, beta=0.5, nu=1.0).omega == pytest.approx(-1.0)


class TestCoefficients:
    def test_constant_shapes(self):
        c = constant_coefficients(2.0, 0.5)
        y = np.linspace(0.0, 1.0, 7)
        assert c.beta(0.3) == 2.0
        np.testing.assert_array_equal(c.nu(0.3, y), np.full(7, 0.5))
        np.testing.assert_array_equal(c.nu_y(0.3, y), np.zeros(7))
        assert c.nu(0.3, 0.2) == 0.5

    def test_beta_must_be_positive(self):
        with pytest.raises(ValueError):
            constant_coefficients(0.0, 1.0)


class TestTabulated:
    @staticmethod
    def _write(tmp_path, nu_rows=None, beta_header="x,beta"):
        xs = np.linspace(0.0, 1.0, 5)
        ys = np.linspace(-1.0, 1.0, 9)
        beta_path = tmp_path / "beta.csv"
        nu_path = tmp_path / "nu.csv"
        names = beta_header.split(",")
        pd.DataFrame({names[0]: xs, names[1]: 1.0 + xs}).to_csv(beta_path, index=False)
        rows = nu_rows if nu_rows is not None else [
            {"x": x, "y": y, "nu": 2.0 * x + 3.0 * y} for x in xs for y in ys
        ]
        pd.DataFrame(rows, columns=["x", "y", "nu"]).to_csv(nu_path, index=False)
        return str(beta_path), str(nu_path)

    def test_interpolates_linear_data_exactly(self, tmp_path):
        beta_csv, nu_csv = self._write(tmp_path)
        c = load_tabulated_coefficients(beta_csv, nu_csv, dy=1e-3)
        assert c.beta(0.35) == pytest.approx(1.35, rel=1e-14)
        assert c.nu(0.35, 0.1) == pytest.approx(2.0 * 0.35 + 0.3, abs=1e-12)
        np.testing.assert_allclose(c.nu(0.5, np.array([-0.5, 0.25])), [-0.5, 1.75], atol=1e-12)
        assert c.nu_y(0.5, 0.3) == pytest.approx(3.0, rel=1e-8)

    def test_rejects_bad_header(self, tmp_path):
        beta_csv, nu_csv = self._write(tmp_path, beta_header="x,b")
        with pytest.raises(ValueError):
            load_tabulated_coefficients(beta_csv, nu_csv, dy=1e-3)

    def test_rejects_incomplete_grid(self, tmp_path):
        rows = [{"x": 0.0, "y": 0.0, "nu": 1.0}, {"x": 0.0, "y": 1.0, "nu": 1.0},
                {"x": 1.0, "y": 0.0, "nu": 1.0}]
        beta_csv, nu_csv = self._write(tmp_path, nu_rows=rows)
        with pytest.raises(ValueError):
            load_tabulated_coefficients(beta_csv, nu_csv, dy=1e-3)
