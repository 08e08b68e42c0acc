"""
Unit tests for the CEP service
"""
import numpy as np
import pytest

from core.exceptions import ConfigurationError
from domain.entities.covariate_model import BernoulliCovariate, EmpiricalCovariate, NormalCovariate
from domain.services.cep import (
    GRID_POINTS,
    cep_band_from_draws,
    cep_from_spec,
    covariate_nodes,
    default_s_grid,
    fit_cep_line,
    marginal_line,
    marginalize_cep,
    s1_moments,
)
from domain.services.surrogacy import collapse_over_x, gamma_from_marginal
from infrastructure.simulation import TABLE_SETTINGS


class TestCovariateNodes:
    """Tests para la representación de X"""

    def test_normal_nodes_reproduce_moments(self):
        """Test: Gauss-Hermite integra media y varianza"""
        nodes, log_w = covariate_nodes(NormalCovariate(mean=1.0, sd=0.5))
        w = np.exp(log_w)
        assert w.sum() == pytest.approx(1.0)
        assert w @ nodes[:, 0] == pytest.approx(1.0)
        assert w @ (nodes[:, 0] - 1.0) ** 2 == pytest.approx(0.25)

    def test_bernoulli_nodes(self):
        """Test: Dos términos exactos"""
        nodes, log_w = covariate_nodes(BernoulliCovariate(p=0.3))
        np.testing.assert_allclose(nodes[:, 0], [0.0, 1.0])
        np.testing.assert_allclose(np.exp(log_w), [0.7, 0.3])

    def test_empirical_nodes(self):
        """Test: Promedio sobre la muestra"""
        nodes, log_w = covariate_nodes(EmpiricalCovariate(np.arange(4.0)))
        assert nodes.shape == (4, 1)
        np.testing.assert_allclose(np.exp(log_w), 0.25)

    def test_missing_model_raises(self):
        """Test: Sin modelo de X"""
        with pytest.raises(ConfigurationError):
            covariate_nodes(None)


class TestGrid:
    """Tests para la rejilla de s"""

    def test_default_grid(self):
        """Test: Media ± 3 sd con 41 puntos"""
        grid = default_s_grid(2.0, 1.0)
        assert grid.size == GRID_POINTS
        assert grid[0] == pytest.approx(-1.0)
        assert grid[-1] == pytest.approx(5.0)

    def test_s1_moments_without_effects(self):
        """Test: Momentos de S(1) sin efecto de X"""
        assert s1_moments(TABLE_SETTINGS["B"].model_spec()) == pytest.approx((2.0, 1.0))

    def test_fit_cep_line(self):
        """Test: Recta exacta recuperada"""
        s = np.linspace(-2, 2, 9)
        assert fit_cep_line(s, 1.5 + 0.25 * s) == pytest.approx((1.5, 0.25))


class TestMarginalCep:
    """Tests para la CEP marginal"""

    def test_normal_quadrature_matches_closed_form(self):
        """Test: Cuadratura y colapso algebraico coinciden para X normal"""
        spec = TABLE_SETTINGS["D"].model_spec()
        exact = gamma_from_marginal(collapse_over_x(spec))
        numeric = marginal_line(spec)
        assert numeric.gamma0 == pytest.approx(exact.gamma0, abs=1e-6)
        assert numeric.gamma1 == pytest.approx(exact.gamma1, abs=1e-6)

    def test_marginal_cep_is_linear_for_normal_x(self):
        """Test: La CEP marginal es una recta cuando X es normal"""
        curve = marginalize_cep(TABLE_SETTINGS["A"].model_spec())
        assert curve.linearity_error() < 1e-8

    def test_binary_covariate_marginal_line(self):
        """Test: Escenario E promediado sobre X binaria"""
        metrics = marginal_line(TABLE_SETTINGS["E"].model_spec())
        assert metrics.gamma1 == pytest.approx(0.553, abs=1e-6)
        assert metrics.gamma0 == pytest.approx(1.369, abs=1e-3)

    def test_cep_without_covariates(self):
        """Test: Modelo sin covariables da la recta marginal"""
        spec = collapse_over_x(TABLE_SETTINGS["B"].model_spec())
        curve = marginalize_cep(spec)
        assert curve.s_grid.size == GRID_POINTS
        np.testing.assert_array_equal(curve.lower, curve.expected_diff)

    def test_conditional_curve(self):
        """Test: Curva condicional en x"""
        curve = cep_from_spec(TABLE_SETTINGS["E"].model_spec(), x=[1.0])
        assert curve.conditioning == "conditional"
        assert curve.x == (1.0,)
        g0, _ = fit_cep_line(curve.s_grid, curve.expected_diff)
        assert g0 == pytest.approx(2.744, abs=1e-3)


class TestCepBand:
    """Tests para la banda creíble"""

    def test_band_contains_mean(self):
        """Test: Banda de colas iguales alrededor de la media"""
        rng = np.random.default_rng(1)
        s = np.linspace(-1, 3, 11)
        curve = cep_band_from_draws(s, rng.normal(0, 0.2, 500), rng.normal(0.55, 0.05, 500))
        assert np.all(curve.lower <= curve.expected_diff)
        assert np.all(curve.expected_diff <= curve.upper)
        assert np.all(curve.upper - curve.lower > 0)

    def test_single_draw_has_zero_width(self):
        """Test: Un solo draw"""
        curve = cep_band_from_draws([0.0, 1.0], [0.1], [0.5])
        np.testing.assert_array_equal(curve.lower, curve.upper)

    def test_misaligned_draws_raise(self):
        """Test: Draws desalineados"""
        with pytest.raises(ValueError):
            cep_band_from_draws([0.0, 1.0], [0.1, 0.2], [0.5])

    def test_empty_draws_raise(self):
        """Test: Sin draws"""
        with pytest.raises(ValueError):
            cep_band_from_draws([0.0, 1.0], [], [])
