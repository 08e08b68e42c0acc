"""
Unit tests for ComputeCepUseCase
"""
from pathlib import Path

import numpy as np
import pytest

from application.dtos.fit_dto import CepInput
from application.use_cases.compute_cep import ComputeCepUseCase, gamma0_at, s1_center
from core.exceptions import DataFormatError
from domain.entities.model_spec import Design
from domain.entities.posterior import PosteriorDraws


@pytest.fixture
def conditional_draws() -> PosteriorDraws:
    """Draws condicionales con X binaria"""
    rng = np.random.default_rng(8)
    n = 300
    names = (
        "beta_S1_intercept", "beta_S1_group", "beta_T0_intercept", "beta_T0_group",
        "beta_T1_intercept", "beta_T1_group", "sd_S1", "sd_T0", "sd_T1",
        "gamma0[group=0]", "gamma0[group=1]", "gamma1", "gamma0_marginal", "gamma1_marginal",
    )
    values = np.column_stack([
        rng.normal(2.0, 0.1, n), rng.normal(0.0, 0.1, n),
        rng.normal(3.0, 0.1, n), rng.normal(-0.75, 0.1, n),
        rng.normal(4.1, 0.1, n), rng.normal(2.0, 0.1, n),
        np.ones(n), np.ones(n), np.ones(n),
        rng.normal(0.0, 0.1, n), rng.normal(2.75, 0.1, n), rng.normal(0.55, 0.05, n),
        rng.normal(1.37, 0.1, n), rng.normal(0.55, 0.05, n),
    ])
    return PosteriorDraws(names=names, values=values, design=Design.ORIGINAL_CONDITIONAL,
                          covariate_names=("group",), ci_assumed=True)


@pytest.fixture
def use_case(mock_dataset_store, mock_result_writer, mock_plotter):
    return ComputeCepUseCase(mock_dataset_store, mock_result_writer, mock_plotter)


class TestHelpers:
    """Tests para gamma0(x) y el centro de la rejilla"""

    def test_gamma0_from_stored_column(self, conditional_draws):
        """Test: Columna guardada"""
        np.testing.assert_array_equal(gamma0_at(conditional_draws, (1.0,)), conditional_draws.column("gamma0[group=1]"))

    def test_gamma0_from_coefficients(self, conditional_draws):
        """Test: Calculado desde los coeficientes"""
        values = gamma0_at(conditional_draws, (0.5,))
        assert values.mean() == pytest.approx((5.1 - 2.625) - 0.55 * 2.0, abs=0.1)

    def test_gamma0_without_source_raises(self):
        """Test: Ni columna ni coeficientes"""
        draws = PosteriorDraws(names=("gamma1",), values=np.ones((5, 1)), design=Design.ORIGINAL_CONDITIONAL,
                               covariate_names=("group",))
        with pytest.raises(DataFormatError):
            gamma0_at(draws, (0.0,))

    def test_s1_center(self, marginal_draws):
        """Test: Media posterior de E(S(1)) y sd_S1"""
        center, spread = s1_center(marginal_draws)
        assert spread == pytest.approx(1.0, abs=0.05)
        assert center == pytest.approx(np.mean(marginal_draws.column("beta_S1_intercept")))


class TestComputeCepUseCase:
    """Tests para el caso de uso de curvas CEP"""

    def test_marginal_curve(self, use_case, mock_result_writer, mock_plotter, marginal_draws, tmp_path):
        """Test: Una curva marginal"""
        mock_result_writer.read_draws.return_value = marginal_draws
        result = use_case.execute(CepInput(draws_path=Path("draws.csv"), output_dir=tmp_path))
        assert result.conditioning == ["marginal"]
        assert result.plot_path == tmp_path / "cep.svg"
        assert result.table_path == tmp_path / "cep_curve.csv"
        curves = mock_plotter.plot_cep.call_args.args[0]
        assert curves[0].s_grid.size == 41

    def test_conditional_default_curves(self, use_case, mock_result_writer, conditional_draws, tmp_path):
        """Test: Una curva por subgrupo más la marginal"""
        mock_result_writer.read_draws.return_value = conditional_draws
        result = use_case.execute(CepInput(draws_path=Path("draws.csv"), output_dir=tmp_path))
        assert result.conditioning == ["group=0", "group=1", "marginal"]

    def test_requested_covariate_values(self, use_case, mock_result_writer, conditional_draws, tmp_path):
        """Test: Valores de X pedidos"""
        mock_result_writer.read_draws.return_value = conditional_draws
        result = use_case.execute(
            CepInput(draws_path=Path("draws.csv"), output_dir=tmp_path, at=[{"group": 1}], grid_points=11)
        )
        assert result.conditioning == ["group=1"]

    def test_data_density(self, use_case, mock_result_writer, mock_dataset_store, mock_plotter,
                          marginal_draws, small_dataset, tmp_path):
        """Test: S(1) observado para la densidad y la rejilla"""
        mock_result_writer.read_draws.return_value = marginal_draws
        mock_dataset_store.read.return_value = small_dataset
        use_case.execute(CepInput(draws_path=Path("draws.csv"), output_dir=tmp_path, data_path=Path("d.csv")))
        sample = mock_plotter.plot_cep.call_args.args[2]
        np.testing.assert_array_equal(sample, [2.0, 3.0])

    def test_missing_gamma1_raises(self, use_case, mock_result_writer, tmp_path):
        """Test: Draws sin gamma1"""
        mock_result_writer.read_draws.return_value = PosteriorDraws(
            names=("gamma0",), values=np.zeros((3, 1)), design=Design.ORIGINAL_MARGINAL
        )
        with pytest.raises(DataFormatError):
            use_case.execute(CepInput(draws_path=Path("draws.csv"), output_dir=tmp_path))
