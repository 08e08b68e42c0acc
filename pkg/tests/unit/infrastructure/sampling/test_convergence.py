"""
Unit tests for the convergence diagnostics
"""
import numpy as np
import pytest

from core.exceptions import TooFewDraws
from domain.entities.model_spec import Design
from domain.entities.posterior import PosteriorDraws
from infrastructure.sampling.convergence import convergence_report, split_rhat


class TestSplitRhat:
    """Tests para el R-hat de cadena partida"""

    def test_constant_series(self):
        """Test: Serie constante da 1"""
        assert split_rhat(np.full(200, 0.3)) == 1.0

    def test_distinct_constant_halves(self):
        """Test: Mitades constantes distintas dan infinito"""
        assert split_rhat(np.repeat([0.0, 1.0], 100)) == float("inf")

    def test_iid_series_near_one(self):
        """Test: Draws independientes"""
        assert split_rhat(np.random.default_rng(0).normal(size=2000)) < 1.05

    def test_trending_series_flagged(self):
        """Test: Tendencia lineal"""
        rng = np.random.default_rng(1)
        assert split_rhat(np.linspace(0, 5, 400) + rng.normal(size=400)) > 1.1


class TestConvergenceReport:
    """Tests para el reporte de convergencia"""

    def test_report_on_stationary_draws(self, marginal_draws):
        """Test: Draws estacionarios no se marcan"""
        report = convergence_report(marginal_draws)
        assert report.names == marginal_draws.names
        assert report.trace.shape == (len(marginal_draws), len(marginal_draws.names))
        assert report.flagged == ()
        assert report.converged()

    def test_flags_drifting_column(self):
        """Test: Columna con deriva marcada"""
        rng = np.random.default_rng(2)
        values = np.column_stack([rng.normal(size=300), np.linspace(0, 10, 300)])
        draws = PosteriorDraws(names=("gamma0", "gamma1"), values=values, design=Design.ORIGINAL_MARGINAL)
        report = convergence_report(draws)
        assert "gamma1" in report.flagged
        assert not report.converged()

    def test_too_few_draws_raise(self):
        """Test: Menos de 100 draws"""
        draws = PosteriorDraws(names=("gamma1",), values=np.zeros((50, 1)), design=Design.ORIGINAL_MARGINAL)
        with pytest.raises(TooFewDraws):
            convergence_report(draws)
