"""
Unit tests for the SVG plotter
"""
import numpy as np
import pytest

from domain.entities.metrics import CepCurve, ValidationMetrics
from infrastructure.storage.matplotlib_plotter import MatplotlibPlotter


@pytest.fixture
def plotter() -> MatplotlibPlotter:
    return MatplotlibPlotter()


@pytest.fixture
def curve() -> CepCurve:
    return CepCurve.from_line(ValidationMetrics(0.0, 0.55), np.linspace(-1.0, 5.0, 41))


SENSITIVITY_ROWS = [
    {"setting": "point(0)", "kind": "fixed", "thetaT": 0.0,
     "gamma1_mean": 0.7, "gamma1_q025": 0.5, "gamma1_q975": 0.9},
    {"setting": "beta(5,6,-0.4,1)", "kind": "prior", "thetaT": 0.236,
     "gamma1_mean": 0.55, "gamma1_q025": 0.2, "gamma1_q975": 0.85},
]


class TestPlotCep:
    """Tests para el gráfico de la CEP"""

    def test_writes_svg(self, plotter, curve, tmp_path):
        """Test: Archivo SVG creado"""
        path = plotter.plot_cep([curve], tmp_path / "plots" / "cep.svg")
        assert path.is_file()
        assert "<svg" in path.read_text(encoding="utf-8")

    def test_deterministic_output(self, plotter, curve, tmp_path):
        """Test: Mismo contenido en dos ejecuciones"""
        sample = np.random.default_rng(0).normal(2.0, 1.0, 50)
        a = plotter.plot_cep([curve], tmp_path / "a.svg", s1_sample=sample)
        b = plotter.plot_cep([curve], tmp_path / "b.svg", s1_sample=sample)
        assert a.read_bytes() == b.read_bytes()

    def test_degenerate_sample(self, plotter, curve, tmp_path):
        """Test: Muestra constante no rompe el gráfico"""
        path = plotter.plot_cep([curve], tmp_path / "cep.svg", s1_sample=np.ones(5))
        assert path.is_file()


class TestPlotSensitivity:
    """Tests para el gráfico de sensibilidad"""

    def test_writes_svg(self, plotter, tmp_path):
        """Test: Un panel por estimando"""
        path = plotter.plot_sensitivity(SENSITIVITY_ROWS, tmp_path / "sens.svg")
        assert path.is_file()

    def test_deterministic_output(self, plotter, tmp_path):
        """Test: Mismo contenido en dos ejecuciones"""
        a = plotter.plot_sensitivity(SENSITIVITY_ROWS, tmp_path / "a.svg")
        b = plotter.plot_sensitivity(SENSITIVITY_ROWS, tmp_path / "b.svg")
        assert a.read_bytes() == b.read_bytes()
