"""
Unit tests for the CSV result writer
"""
from dataclasses import asdict

import numpy as np
import pandas as pd
import pytest

from core.exceptions import DataFormatError
from domain.entities.metrics import CepCurve, ValidationMetrics
from domain.entities.model_spec import Design
from domain.entities.replication import EstimandSummary, EstimateRecord, ReplicationRun, ReplicationSummary
from infrastructure.sampling import convergence_report
from infrastructure.storage.csv_result_writer import CsvResultWriter


@pytest.fixture
def writer() -> CsvResultWriter:
    return CsvResultWriter()


class TestDraws:
    """Tests para los archivos de draws"""

    def test_round_trip_with_metadata(self, writer, tmp_path, marginal_draws):
        """Test: Valores y metadatos conservados"""
        path = writer.write_draws(marginal_draws, tmp_path / "draws.csv")
        assert path.read_text(encoding="utf-8").startswith("# design=1\n")
        back = writer.read_draws(path)
        assert back.names == marginal_draws.names
        assert back.design is Design.ORIGINAL_MARGINAL
        assert back.seed == 5
        np.testing.assert_array_equal(back.values, marginal_draws.values)

    def test_missing_file_raises(self, writer, tmp_path):
        """Test: Archivo inexistente"""
        with pytest.raises(DataFormatError):
            writer.read_draws(tmp_path / "missing.csv")

    def test_missing_header_raises(self, writer, tmp_path):
        """Test: Sin cabecera de diseño"""
        path = tmp_path / "draws.csv"
        path.write_text("gamma0,gamma1\n0.1,0.5\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="design"):
            writer.read_draws(path)

    def test_no_draws_raises(self, writer, tmp_path):
        """Test: Solo cabeceras"""
        path = tmp_path / "draws.csv"
        path.write_text("# design=1\ngamma0,gamma1\n", encoding="utf-8")
        with pytest.raises(DataFormatError):
            writer.read_draws(path)


class TestTables:
    """Tests para las tablas de resultados"""

    def test_summary(self, writer, tmp_path, marginal_draws):
        """Test: Una fila por parámetro"""
        rows = [asdict(s) for s in marginal_draws.summary(("gamma1",))]
        path = writer.write_summary(rows, tmp_path / "summary.csv")
        frame = pd.read_csv(path)
        assert len(frame) == 1

    def test_convergence(self, writer, tmp_path, marginal_draws):
        """Test: R-hat y trazas"""
        report = convergence_report(marginal_draws)
        rhat_path, trace_path = writer.write_convergence(report, tmp_path / "rhat.csv", tmp_path / "trace.csv")
        rhat = pd.read_csv(rhat_path)
        trace = pd.read_csv(trace_path)
        assert list(rhat.columns) == ["parameter", "rhat", "flagged"]
        assert len(rhat) == len(marginal_draws.names)
        assert trace.columns[0] == "iteration"
        assert len(trace) == len(marginal_draws)

    def test_cep_curves(self, writer, tmp_path):
        """Test: Curvas apiladas"""
        grid = np.linspace(-1, 1, 5)
        curves = [
            CepCurve.from_line(ValidationMetrics(0.0, 0.5), grid),
            CepCurve.from_line(ValidationMetrics(0.2, 0.5, scope="conditional", x=(1.0,)), grid, "conditional"),
        ]
        frame = pd.read_csv(writer.write_cep_curves(curves, tmp_path / "cep.csv"))
        assert len(frame) == 10
        assert set(frame["conditioning"]) == {"marginal", "conditional"}

    def test_replications(self, writer, tmp_path):
        """Test: Resumen largo y detalle por réplica"""
        summary = ReplicationSummary(
            setting="B", design=Design.ORIGINAL_MARGINAL, ci_assumed=True, algorithm="observed", n=100, n_reps=2,
            estimands=(EstimandSummary(estimand="gamma1", truth=0.55, mean_estimate=0.56, bias=0.01, se=0.1,
                                       sd=0.09, coverage=1.0, covers_zero=0.0),),
            runs=(
                ReplicationRun(index=0, seed=1, estimates={"gamma1": EstimateRecord(0.56, 0.1, 0.36, 0.76)},
                               oracle={"gamma1": 0.55}, verdict="valid"),
                ReplicationRun(index=1, seed=2, error="ChainDiverged: boom"),
            ),
        )
        summary_path, runs_path = writer.write_replications(summary, tmp_path / "s.csv", tmp_path / "r.csv")
        runs = pd.read_csv(runs_path)
        assert len(runs) == 2
        assert "gamma1_oracle" in runs.columns
        assert runs.loc[1, "error"] == "ChainDiverged: boom"
        assert len(pd.read_csv(summary_path)) > 0
