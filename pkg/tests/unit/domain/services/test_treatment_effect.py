"""
Unit tests for the least-squares treatment effect
"""
import numpy as np
import pytest

from core.exceptions import MissingBaseline, RankDeficient
from domain.entities.model_spec import Design
from domain.entities.trial import TrialDataset
from domain.services.treatment_effect import ols_fit, treatment_effect


class TestOlsFit:
    """Tests para el ajuste por mínimos cuadrados"""

    def test_exact_line(self):
        """Test: Recupera una recta sin ruido"""
        x = np.linspace(0, 1, 10)
        fit = ols_fit(1.0 + 2.0 * x, {"x": x})
        assert fit.params["intercept"] == pytest.approx(1.0)
        assert fit.params["x"] == pytest.approx(2.0)
        assert fit.names == ("intercept", "x")
        assert fit.n == 10

    def test_confidence_interval_contains_estimate(self):
        """Test: Intervalo al 95% alrededor del estimador"""
        rng = np.random.default_rng(0)
        x = rng.normal(size=50)
        fit = ols_fit(0.5 * x + rng.normal(size=50), {"x": x})
        lo, hi = fit.conf_int["x"]
        assert lo < fit.params["x"] < hi
        assert fit.bse["x"] > 0

    def test_collinear_columns_raise(self):
        """Test: Diseño de rango incompleto"""
        x = np.arange(6.0)
        with pytest.raises(RankDeficient):
            ols_fit(x, {"a": x, "b": 2 * x})

    def test_too_few_rows_raise(self):
        """Test: Menos filas que columnas"""
        with pytest.raises(RankDeficient):
            ols_fit([1.0, 2.0], {"a": [0.0, 1.0]})


class TestTreatmentEffect:
    """Tests para el efecto del tratamiento"""

    def test_marginal_effect_is_difference_in_means(self, small_dataset):
        """Test: Diseño 1 = diferencia de medias observadas"""
        effect = treatment_effect(small_dataset, Design.ORIGINAL_MARGINAL)
        assert effect.estimate == pytest.approx(5.75 - 3.5)
        assert effect.n == 4
        assert effect.ci_low < effect.estimate < effect.ci_high

    def test_diff_endpoint_subtracts_baseline(self, small_dataset):
        """Test: Diseño 3 usa T - basal"""
        effect = treatment_effect(small_dataset, Design.DIFF_MARGINAL)
        assert effect.estimate == pytest.approx(4.75 - 2.0)

    def test_simulated_trial_effect(self, trial_b):
        """Test: Efecto cercano a 4.1 - 3 en el escenario B"""
        _, data = trial_b
        effect = treatment_effect(data, Design.ORIGINAL_CONDITIONAL)
        assert abs(effect.estimate - 1.1) < 4 * effect.se

    def test_diff_without_baseline_raises(self):
        """Test: Diseño diferencia sin basal"""
        data = TrialDataset(ids=("1", "2", "3", "4"), z=[0, 0, 1, 1], x=np.empty((4, 0)),
                            s1=[np.nan, np.nan, 1.0, 2.0], t0=[1.0, 2.0, np.nan, np.nan],
                            t1=[np.nan, np.nan, 3.0, 4.0])
        with pytest.raises(MissingBaseline):
            treatment_effect(data, Design.DIFF_MARGINAL)
