"""
Unit tests for the command-line application
"""
import pandas as pd
import pytest
from pydantic import ValidationError

from domain.entities.simulation import NoiseKind
from infrastructure.config.settings import get_settings
from presentation.cli.app import (
    build_parser,
    child_seed,
    collect_options,
    main,
    noise_family,
    resolve_seed,
    resolve_setting,
)
from presentation.cli.schemas import FitConfig, NoiseOptions, ReplicateConfig, SettingChoice

FAST = ["--n-iter", "150", "--burn-in", "50", "--grid-coarse", "20", "--grid-fine", "20"]


class TestHelpers:
    """Tests para las funciones auxiliares de la CLI"""

    def test_explicit_seed(self):
        """Test: Semilla dada"""
        assert resolve_seed({"seed": "17"}) == 17

    def test_fresh_seed(self):
        """Test: Semilla nueva sin --seed"""
        assert resolve_seed({}) >= 0

    def test_child_seed_deterministic(self):
        """Test: Semilla hija reproducible y distinta"""
        assert child_seed(5) == child_seed(5)
        assert child_seed(5) != child_seed(6)

    def test_noise_family(self):
        """Test: Familia de errores desde las opciones"""
        assert noise_family(NoiseOptions(noise="t", df=7)).df == 7
        assert noise_family(NoiseOptions(noise="gamma")).kind is NoiseKind.GAMMA
        assert noise_family(NoiseOptions()).kind is NoiseKind.GAUSSIAN

    def test_resolve_custom_setting(self, tmp_path):
        """Test: Escenario desde archivo de parámetros"""
        path = tmp_path / "custom.cfg"
        path.write_text(
            "omega1=2\nomega2=0\nomega3=3\nomega4=1\nomega5=4.1\nomega6=1\n"
            "eps_s1=1\neps_t0=1\neps_t1=1\ntheta11=0.7\nthetaT=0.21\nx_mean=1\nx_sd=0.5\nname=mine\n",
            encoding="utf-8",
        )
        assert resolve_setting(SettingChoice(params=path)).name == "mine"
        assert resolve_setting(SettingChoice(setting="c")).name == "C"
        assert resolve_setting(SettingChoice()) is None

    def test_collect_options_precedence(self, tmp_path):
        """Test: Defaults < archivo < flags"""
        config = tmp_path / "run.cfg"
        config.write_text("n_iter = 800\nburn_in = 300\n", encoding="utf-8")
        args = build_parser().parse_args(["--config", str(config), "fit", "--setting", "B", "--burn-in", "200"])
        command, options = collect_options(args, get_settings())
        assert command == "fit"
        assert options["n_iter"] == "800"
        assert options["burn_in"] == 200
        assert options["grid_fine"] == get_settings().GRID_FINE
        assert "config" not in options

    def test_no_ci_flag_overrides_config(self, tmp_path):
        """Test: --no-ci anula ci = true del archivo de configuración"""
        config = tmp_path / "run.cfg"
        config.write_text("ci = true\n", encoding="utf-8")
        parser = build_parser()

        _, from_file = collect_options(parser.parse_args(["--config", str(config), "fit", "--setting", "B"]),
                                       get_settings())
        _, overridden = collect_options(
            parser.parse_args(["--config", str(config), "fit", "--setting", "B", "--no-ci"]), get_settings()
        )

        assert FitConfig(**from_file).ci is True
        assert overridden["ci"] is False
        assert FitConfig(**overridden).ci is False

    def test_replicate_threads_flag(self):
        """Test: --threads llega a la configuración de replicate"""
        args = build_parser().parse_args(["replicate", "--setting", "B", "--threads", "2"])
        _, options = collect_options(args, get_settings())
        assert ReplicateConfig(**options).threads == 2
        with pytest.raises(ValidationError):
            ReplicateConfig(**{**options, "threads": 0})

    def test_missing_command_exits(self):
        """Test: Sin subcomando"""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestMain:
    """Tests de punta a punta de la CLI"""

    def test_simulate(self, tmp_path):
        """Test: simulate escribe los datos"""
        code = main(["--seed", "3", "--output-dir", str(tmp_path), "simulate", "--setting", "B", "--n", "20",
                     "--write-full"])
        assert code == 0
        frame = pd.read_csv(tmp_path / "trial_data.csv")
        assert len(frame) == 20
        assert (tmp_path / "counterfactuals.csv").is_file()

    def test_fit_then_cep(self, tmp_path):
        """Test: fit seguido de cep sobre los draws escritos"""
        code = main(["--seed", "1", "--output-dir", str(tmp_path), "fit", "--setting", "E", "--n", "40",
                     "--design", "2", "--ci", *FAST])
        assert code == 0
        summary = pd.read_csv(tmp_path / "summary.csv")
        assert "gamma0[group=1]" in set(summary["estimand"])
        code = main(["--output-dir", str(tmp_path / "cep"), "cep", "--draws", str(tmp_path / "draws.csv"),
                     "--at", "group=1"])
        assert code == 0
        assert (tmp_path / "cep" / "cep.svg").is_file()

    def test_unknown_setting_exit_code(self, tmp_path):
        """Test: Escenario desconocido da código 2"""
        assert main(["--output-dir", str(tmp_path), "simulate", "--setting", "Z"]) == 2

    def test_thetaT_equal_one_rejected(self, tmp_path):
        """Test: thetaT = 1 da código 2 antes de muestrear"""
        code = main(["--output-dir", str(tmp_path), "sensitivity", "--setting", "B", "--values", "0.2", "1.0", *FAST])
        assert code == 2
        assert not (tmp_path / "sensitivity.csv").exists()

    def test_missing_draw_file_exit_code(self, tmp_path):
        """Test: Archivo de draws inexistente"""
        assert main(["--output-dir", str(tmp_path), "cep", "--draws", str(tmp_path / "none.csv")]) == 2

    def test_missing_baseline_exit_code(self, tmp_path):
        """Test: Diseño diferencia en X binaria da código 2"""
        code = main(["--seed", "1", "--output-dir", str(tmp_path), "fit", "--setting", "E", "--n", "20",
                     "--design", "3", *FAST])
        assert code == 2

    def test_invalid_environment_exit_code(self, tmp_path, monkeypatch):
        """Test: Variable SURROCEP_* inválida da código 2 y no escribe salida"""
        monkeypatch.setenv("SURROCEP_N_ITER", "muchas")
        get_settings.cache_clear()
        try:
            code = main(["--output-dir", str(tmp_path), "simulate", "--setting", "B", "--n", "20"])
        finally:
            monkeypatch.delenv("SURROCEP_N_ITER")
            get_settings.cache_clear()
        assert code == 2
        assert not (tmp_path / "trial_data.csv").exists()
