"""
Unit tests for the replication harness
"""
import pytest

from core.exceptions import ConfigurationError, MissingBaseline
from domain.entities.model_spec import Design
from domain.entities.prior import ChainConfig
from domain.entities.replication import ReplicationRun, ReplicationSummary
from infrastructure.sampling import SAMPLERS, ObservedDataSampler
from infrastructure.simulation import TABLE_SETTINGS, get_setting, run_replications, verdict_agreement
from infrastructure.simulation.replication import population_points, reported_key, verdict_pair

FAST = ChainConfig(n_iter=150, burn_in=50, grid_coarse=20, grid_fine=20)


def _summary(verdicts) -> ReplicationSummary:
    runs = tuple(
        ReplicationRun(index=i, seed=i, verdict=v) if v else ReplicationRun(index=i, seed=i, error="ChainDiverged: x")
        for i, v in enumerate(verdicts)
    )
    return ReplicationSummary(setting="B", design=Design.ORIGINAL_MARGINAL, ci_assumed=True, algorithm="observed",
                              n=100, n_reps=len(runs), estimands=(), runs=runs)


class TestHelpers:
    """Tests para las funciones auxiliares"""

    def test_population_points_binary(self, setting_e):
        """Test: Ambos niveles de X binaria"""
        assert population_points(setting_e) == ((0.0,), (1.0,))

    def test_population_points_normal(self, setting_a):
        """Test: Media poblacional"""
        assert population_points(setting_a) == ((1.0,),)

    def test_population_points_dmd(self):
        """Test: Punto medio de la edad y su cuadrado"""
        assert population_points(get_setting("DMD")) == ((22.0, 6.0, 36.0),)

    @pytest.mark.parametrize("design,estimand,key", [
        (Design.ORIGINAL_MARGINAL, "gamma1", "O:gamma1"),
        (Design.DIFF_MARGINAL, "gamma0", "D:gamma0"),
        (Design.ORIGINAL_CONDITIONAL, "gamma0[group=1]", "C:gamma0[group=1]"),
        (Design.ORIGINAL_CONDITIONAL, "gamma0_marginal", "O:gamma0"),
        (Design.DIFF_CONDITIONAL, "gamma1_marginal", "D:gamma1"),
    ])
    def test_reported_key(self, design, estimand, key):
        """Test: Clave del valor tabulado"""
        assert reported_key(design, estimand) == key

    def test_verdict_pair(self):
        """Test: Columnas del veredicto"""
        assert verdict_pair(Design.ORIGINAL_MARGINAL) == ("gamma0", "gamma1")
        assert verdict_pair(Design.ORIGINAL_CONDITIONAL) == ("gamma0_marginal", "gamma1_marginal")


class TestRunReplications:
    """Tests para el arnés de réplicas"""

    def test_small_run(self, setting_b):
        """Test: Resumen por estimando con pocas réplicas"""
        summary = run_replications(setting_b, 40, 3, Design.ORIGINAL_MARGINAL, True, cfg=FAST, seed=1, oracle_n=2000)
        assert summary.n_reps == 3
        assert len(summary.runs) == 3
        assert {e.estimand for e in summary.estimands} == {"gamma0", "gamma1"}
        gamma1 = summary.estimand("gamma1")
        assert 0.0 <= gamma1.coverage <= 1.0
        assert gamma1.reported_truth == 0.55
        assert all(run.verdict in ("valid", "invalid") for run in summary.runs if run.ok)

    def test_same_seed_same_summary(self, setting_b):
        """Test: Reproducible con la misma semilla"""
        args = (setting_b, 20, 2, Design.ORIGINAL_MARGINAL, True)
        a = run_replications(*args, cfg=FAST, seed=3, oracle_n=500)
        b = run_replications(*args, cfg=FAST, seed=3, oracle_n=500)
        assert a.estimand("gamma1").mean_estimate == b.estimand("gamma1").mean_estimate

    def test_conditional_binary(self, setting_e):
        """Test: Estimandos por subgrupo"""
        summary = run_replications(setting_e, 40, 2, Design.ORIGINAL_CONDITIONAL, True, cfg=FAST, oracle_n=2000)
        names = {e.estimand for e in summary.estimands}
        assert {"gamma0[group=0]", "gamma0[group=1]", "gamma1", "gamma0_marginal"} <= names

    def test_numerical_error_in_one_run_is_counted(self, setting_b, monkeypatch):
        """Test: Un ValueError de numpy en una réplica se registra como fallo y el resto continúa"""
        calls = []

        class FlakySampler(ObservedDataSampler):
            def run(self, *args, **kwargs):
                calls.append(1)
                if len(calls) == 1:
                    raise ValueError("array must not contain infs or NaNs")
                return super().run(*args, **kwargs)

        monkeypatch.setitem(SAMPLERS, "observed", FlakySampler)
        summary = run_replications(setting_b, 40, 3, Design.ORIGINAL_MARGINAL, True, cfg=FAST, seed=4, oracle_n=500)

        assert summary.n_failed == 1
        failed = [run for run in summary.runs if not run.ok]
        assert failed[0].index == 0
        assert failed[0].error.startswith("ValueError: ")
        assert summary.estimand("gamma1") is not None

    def test_zero_reps_raises(self, setting_b):
        """Test: n_reps < 1"""
        with pytest.raises(ConfigurationError):
            run_replications(setting_b, 20, 0, Design.ORIGINAL_MARGINAL, True)

    def test_unknown_algorithm_raises(self, setting_b):
        """Test: Algoritmo desconocido"""
        with pytest.raises(ConfigurationError):
            run_replications(setting_b, 20, 1, Design.ORIGINAL_MARGINAL, True, algorithm="hmc")

    def test_diff_without_baseline_raises(self):
        """Test: Diferencia en el escenario binario"""
        with pytest.raises(MissingBaseline):
            run_replications(TABLE_SETTINGS["E"], 20, 1, Design.DIFF_MARGINAL, True)


class TestVerdictAgreement:
    """Tests para la concordancia de veredictos"""

    def test_agreement_share(self):
        """Test: Fracción de réplicas con el mismo veredicto"""
        a = _summary(["valid", "valid", "invalid", "valid"])
        b = _summary(["valid", "invalid", "invalid", "valid"])
        assert verdict_agreement(a, b) == pytest.approx(0.75)

    def test_failed_runs_skipped(self):
        """Test: Réplicas fallidas no cuentan"""
        a = _summary(["valid", None])
        b = _summary(["valid", "invalid"])
        assert verdict_agreement(a, b) == 1.0

    def test_no_common_runs_raises(self):
        """Test: Sin réplicas exitosas en común"""
        with pytest.raises(ConfigurationError):
            verdict_agreement(_summary([None]), _summary(["valid"]))
