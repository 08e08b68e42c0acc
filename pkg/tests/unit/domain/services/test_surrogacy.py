"""
Unit tests for the surrogacy service
"""
import numpy as np
import pytest

from core.exceptions import ConfigurationError, DegenerateVariance, MissingBaseline
from domain.entities.gaussian import CorrelationState
from domain.entities.metrics import Verdict
from domain.entities.model_spec import Design, EndpointMode, ModelSpec
from domain.entities.trial import TrialRecord
from domain.services.surrogacy import (
    apply_ci_constraint,
    ci_deviation,
    collapse_over_x,
    complete_covariates,
    covariate_label,
    default_covariate_points,
    endpoint_transform,
    gamma_conditional,
    gamma_from_marginal,
    gamma_from_moments,
    joint_with_covariate,
    marginal_metrics,
    surrogate_verdict,
)
from infrastructure.simulation import TABLE_SETTINGS


def _marginal_spec(corr: CorrelationState, intercepts=(2.0, 3.0, 4.1), sds=(1.0, 1.0, 1.0)) -> ModelSpec:
    return ModelSpec(
        design=Design.ORIGINAL_MARGINAL,
        intercepts=np.array(intercepts),
        slopes=np.zeros((3, 0)),
        sds=np.array(sds),
        corr=corr,
    )


class TestGammaFromMarginal:
    """Tests para las métricas marginales"""

    def test_setting_b_values(self):
        """Test: gamma1 = 0.7 - 0.15 y gamma0 = 1.1 - 0.55 * 2"""
        spec = _marginal_spec(CorrelationState(theta11=0.7, theta10=0.15, thetaT=0.21))
        metrics = gamma_from_marginal(spec)
        assert metrics.gamma1 == pytest.approx(0.55)
        assert metrics.gamma0 == pytest.approx(0.0, abs=1e-12)

    def test_zero_correlations_equal_means(self):
        """Test: Sin correlación ni efecto"""
        spec = _marginal_spec(CorrelationState(0.0, 0.0, 0.0), intercepts=(0.0, 1.0, 1.0))
        metrics = gamma_from_marginal(spec)
        assert metrics.gamma0 == pytest.approx(0.0)
        assert metrics.gamma1 == pytest.approx(0.0)

    def test_covariate_effects_raise(self):
        """Test: Un modelo con pendientes debe colapsarse antes"""
        spec = ModelSpec.from_omegas((2, 0, 3, 1, 4.1, 1), (1, 1, 1), 0.7, 0.21)
        with pytest.raises(ConfigurationError):
            gamma_from_marginal(spec)

    def test_degenerate_variance_raises(self):
        """Test: Var(S(1)) = 0"""
        with pytest.raises(DegenerateVariance):
            gamma_from_moments([0.0, 0.0, 0.0], np.diag([0.0, 1.0, 1.0]))


class TestGammaConditional:
    """Tests para las métricas condicionales"""

    def test_setting_d_slope(self):
        """Test: gamma1 = theta11 - theta10 con sds unitarias"""
        spec = ModelSpec.from_omegas((2, 0, 3, 3, 4.1, 1), (1, 1, 1), 0.3, 0.26, theta10=0.08)
        metrics = gamma_conditional(spec, [1.0])
        assert metrics.gamma1 == pytest.approx(0.22)

    def test_gamma1_does_not_depend_on_x(self):
        """Test: La pendiente condicional es la misma para todo x"""
        spec = TABLE_SETTINGS["D"].model_spec()
        assert gamma_conditional(spec, [0.0]).gamma1 == pytest.approx(gamma_conditional(spec, [2.0]).gamma1)

    def test_setting_e_subgroups(self):
        """Test: gamma0(0) ~ 0 y gamma0(1) ~ 2.75 con X binaria"""
        spec = TABLE_SETTINGS["E"].model_spec()
        assert gamma_conditional(spec, [0.0]).gamma0 == pytest.approx(0.0, abs=0.01)
        assert gamma_conditional(spec, [1.0]).gamma0 == pytest.approx(2.75, abs=0.01)

    def test_marginal_design_raises(self):
        """Test: Diseño marginal no admite condicionamiento"""
        spec = _marginal_spec(CorrelationState.constrained(0.5, 0.2))
        with pytest.raises(ConfigurationError):
            gamma_conditional(spec, [0.0])


class TestConditionalIndependence:
    """Tests para la restricción de independencia condicional"""

    @pytest.mark.parametrize("thetaT,theta11,expected", [
        (0.21, 0.7, 0.147),
        (0.26, 0.3, 0.078),
        (0.0, 0.9, 0.0),
    ])
    def test_apply_ci_constraint(self, thetaT, theta11, expected):
        """Test: theta10 = thetaT * theta11"""
        assert apply_ci_constraint(thetaT, theta11) == pytest.approx(expected)

    def test_ci_deviation(self):
        """Test: Desviación de CI sobre la escala del modelo"""
        free = _marginal_spec(CorrelationState(theta11=0.7, theta10=0.15, thetaT=0.21))
        constrained = _marginal_spec(CorrelationState.constrained(0.7, 0.21))
        assert ci_deviation(free) == pytest.approx(0.003)
        assert ci_deviation(constrained) == pytest.approx(0.0)


class TestCollapse:
    """Tests para integrar la covariable normal"""

    def test_joint_with_covariate_moments(self):
        """Test: Media y covarianza de (S1, T0, T1, X)"""
        spec = TABLE_SETTINGS["A"].model_spec()
        joint = joint_with_covariate(spec)
        np.testing.assert_allclose(joint.mean, [2.0, 4.0, 5.1, 1.0])
        assert joint.covariance[1, 1] == pytest.approx(1.0 + 0.25)
        assert joint.covariance[2, 3] == pytest.approx(0.25)

    def test_setting_a_marginal_matches_b(self):
        """Test: Sin efecto de X sobre S(1) la recta marginal no cambia"""
        metrics = gamma_from_marginal(collapse_over_x(TABLE_SETTINGS["A"].model_spec()))
        assert metrics.gamma1 == pytest.approx(0.553)
        assert metrics.gamma0 == pytest.approx(0.0, abs=0.01)

    def test_setting_d_marginal(self):
        """Test: Escenario D marginal ~ (-1.35, 0.22)"""
        metrics = marginal_metrics(TABLE_SETTINGS["D"].model_spec())
        assert metrics.gamma0 == pytest.approx(-1.35, abs=0.01)
        assert metrics.gamma1 == pytest.approx(0.22, abs=0.01)

    def test_setting_b_conditional_equals_marginal(self):
        """Test: Sin efecto de X condicional y marginal coinciden"""
        spec = TABLE_SETTINGS["B"].model_spec()
        marginal = marginal_metrics(spec)
        conditional = gamma_conditional(spec, [1.0])
        assert marginal.gamma0 == pytest.approx(conditional.gamma0)
        assert marginal.gamma1 == pytest.approx(conditional.gamma1)

    def test_collapsed_design_is_marginal(self):
        """Test: El diseño colapsado es marginal"""
        collapsed = collapse_over_x(TABLE_SETTINGS["A"].model_spec())
        assert collapsed.design is Design.ORIGINAL_MARGINAL
        assert collapsed.n_covariates == 0

    def test_binary_covariate_has_no_closed_form(self):
        """Test: X binaria requiere cuadratura"""
        assert marginal_metrics(TABLE_SETTINGS["E"].model_spec()) is None


class TestEndpointTransform:
    """Tests para el resultado diferencia desde la basal"""

    def test_spec_slopes_shift(self):
        """Test: Las pendientes de T pierden 1 en la basal"""
        spec = TABLE_SETTINGS["A"].model_spec()
        diff = endpoint_transform(spec, EndpointMode.DIFF_FROM_BASELINE)
        np.testing.assert_allclose(diff.slopes[:, 0], [0.0, 0.0, 0.0])
        assert diff.design is Design.DIFF_CONDITIONAL

    def test_diff_leaves_cep_line_unchanged(self):
        """Test: T^D(1) - T^D(0) = T(1) - T(0)"""
        spec = TABLE_SETTINGS["A"].model_spec()
        original = marginal_metrics(spec)
        diff = marginal_metrics(endpoint_transform(spec, EndpointMode.DIFF_FROM_BASELINE))
        assert diff.gamma0 == pytest.approx(original.gamma0)
        assert diff.gamma1 == pytest.approx(original.gamma1)

    def test_round_trip(self):
        """Test: Ida y vuelta entre escalas"""
        spec = TABLE_SETTINGS["D"].model_spec()
        back = endpoint_transform(endpoint_transform(spec, "diff"), "original")
        np.testing.assert_allclose(back.slopes, spec.slopes)

    def test_binary_baseline_raises(self):
        """Test: X binaria no sirve de basal"""
        spec = TABLE_SETTINGS["E"].model_spec()
        with pytest.raises(MissingBaseline):
            endpoint_transform(spec, EndpointMode.DIFF_FROM_BASELINE)

    def test_dataset_transform(self, small_dataset):
        """Test: T observado menos la basal"""
        diff = endpoint_transform(small_dataset, EndpointMode.DIFF_FROM_BASELINE)
        np.testing.assert_allclose(diff.t0[:2], [2.0, 2.0])
        np.testing.assert_allclose(diff.t1[2:], [4.5, 5.0])
        np.testing.assert_array_equal(diff.s1, small_dataset.s1)

    def test_record_transform(self):
        """Test: Registro individual"""
        record = TrialRecord(id="1", z=1, x=(2.0,), s1=1.0, t1=5.0)
        diff = endpoint_transform(record, EndpointMode.DIFF_FROM_BASELINE)
        assert diff.t1 == 3.0 and diff.t0 is None

    def test_record_without_baseline_raises(self):
        """Test: Registro sin covariables"""
        record = TrialRecord(id="1", z=0, x=(), t0=1.0)
        with pytest.raises(MissingBaseline):
            endpoint_transform(record, EndpointMode.DIFF_FROM_BASELINE)

    def test_unsupported_type_raises(self):
        """Test: Tipo no soportado"""
        with pytest.raises(TypeError):
            endpoint_transform(3.0)


class TestVerdict:
    """Tests para el veredicto del sustituto"""

    @pytest.mark.parametrize("g0,g1,expected", [
        ((-0.2, 0.3), (0.4, 0.7), Verdict.VALID),
        ((0.1, 0.3), (0.4, 0.7), Verdict.INVALID),
        ((-0.2, 0.3), (-0.1, 0.7), Verdict.INVALID),
        ((0.0, 0.3), (0.4, 0.7), Verdict.VALID),
    ])
    def test_verdict(self, g0, g1, expected):
        """Test: gamma0 contiene 0 y gamma1 lo excluye"""
        assert surrogate_verdict(g0, g1) is expected


class TestCovariateHelpers:
    """Tests para los vectores de covariables"""

    def test_complete_squares(self):
        """Test: age_sq se completa como age^2"""
        names = ("baseline", "age", "age_sq")
        assert complete_covariates(names, {"baseline": 22, "age": 6}) == (22.0, 6.0, 36.0)

    def test_unknown_covariate_raises(self):
        """Test: Covariable desconocida"""
        with pytest.raises(ConfigurationError, match="Unknown"):
            complete_covariates(("baseline",), {"weight": 1.0})

    def test_missing_covariate_raises(self):
        """Test: Covariable faltante"""
        with pytest.raises(ConfigurationError, match="Missing"):
            complete_covariates(("baseline", "age"), {"baseline": 1.0})

    def test_label_omits_squares(self):
        """Test: Etiqueta sin columnas cuadráticas derivadas"""
        assert covariate_label(("baseline", "age", "age_sq"), (22.0, 6.0, 36.0)) == "baseline=22,age=6"

    def test_default_points_binary(self):
        """Test: X binaria reporta ambos niveles"""
        assert default_covariate_points(("group",), np.array([[0.0], [1.0], [1.0]])) == [(0.0,), (1.0,)]

    def test_default_points_mean(self):
        """Test: Covariables continuas en la media muestral"""
        x = np.array([[20.0, 4.0, 16.0], [24.0, 8.0, 64.0]])
        points = default_covariate_points(("baseline", "age", "age_sq"), x)
        assert points == [(22.0, 6.0, 36.0)]

    def test_default_points_empty(self):
        """Test: Sin covariables no hay puntos"""
        assert default_covariate_points((), np.empty((5, 0))) == []
