"""
Command-line application: simulate, fit, cep, replicate and sensitivity
"""
import argparse
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from numpy.random import SeedSequence
from pydantic import ValidationError

from application.dtos.fit_dto import CepInput, DataSource, FitInput, SensitivityInput
from application.dtos.simulation_dto import ReplicateInput, SimulateInput
from core.exceptions import ConfigurationError
from core.logging_config import setup_logging
from domain.entities.model_spec import Design
from domain.entities.simulation import NoiseFamily, SimSetting
from infrastructure.config.settings import Settings, get_settings
from infrastructure.simulation import SETTING_NAMES, custom_setting, get_setting
from presentation.middleware.error_handler import run_guarded

from . import dependencies
from .config_file import merge_options, read_config
from .schemas import CepConfig, FitConfig, NoiseOptions, ReplicateConfig, SensitivityConfig, SettingChoice, SimulateConfig

logger = logging.getLogger(__name__)

Options = Dict[str, object]


def resolve_seed(options: Options) -> int:
    """Seed from flags/config, or fresh system entropy (logged so the run can be repeated)"""
    seed = options.get("seed")
    if seed is not None:
        return int(seed)
    chosen = int(SeedSequence().generate_state(1, dtype=np.uint32)[0])
    logger.info(f"No --seed given; using seed {chosen}")
    return chosen


def child_seed(seed: int) -> int:
    """Independent stream for the chain when the same seed also drives data generation"""
    return int(SeedSequence(seed).spawn(1)[0].generate_state(1, dtype=np.uint64)[0])


def resolve_setting(choice: SettingChoice) -> Optional[SimSetting]:
    if choice.params is not None:
        return custom_setting(read_config(choice.params))
    if choice.setting is not None:
        return get_setting(choice.setting)
    return None


def noise_family(options: NoiseOptions) -> NoiseFamily:
    if options.noise == "t":
        return NoiseFamily.student_t(options.df)
    if options.noise == "gamma":
        return NoiseFamily.gamma(options.shape)
    return NoiseFamily.gaussian()


def output_dir(options: Options, settings: Settings) -> Path:
    return Path(str(options.get("output_dir") or settings.OUTPUT_DIR))


# ========== Commands ==========

def cmd_simulate(options: Options, settings: Settings) -> None:
    cfg = SimulateConfig(**options)
    seed = resolve_seed(options)
    result = dependencies.get_simulate_use_case().execute(SimulateInput(
        setting=resolve_setting(cfg),
        n=cfg.n,
        seed=seed,
        output_dir=output_dir(options, settings),
        noise=noise_family(cfg),
        write_full=cfg.write_full,
    ))
    logger.info(f"Simulated data: {result.to_dict()}")


def cmd_fit(options: Options, settings: Settings) -> None:
    cfg = FitConfig(**options)
    seed = resolve_seed(options)
    result = dependencies.get_fit_use_case().execute(FitInput(
        source=DataSource(data_path=cfg.data, setting=resolve_setting(cfg), n=cfg.n, seed=seed),
        design=Design(cfg.design),
        ci_assumed=cfg.ci,
        output_dir=output_dir(options, settings),
        algorithm=cfg.algorithm,
        priors=cfg.to_priors(cfg.ci),
        chain=cfg.to_chain(child_seed(seed)),
        at=cfg.points(),
    ))
    if result.flagged:
        logger.warning(f"R-hat above threshold for {list(result.flagged)}")


def cmd_cep(options: Options, settings: Settings) -> None:
    cfg = CepConfig(**options)
    dependencies.get_cep_use_case().execute(CepInput(
        draws_path=cfg.draws,
        output_dir=output_dir(options, settings),
        at=cfg.points(),
        data_path=cfg.data,
        grid_points=settings.CEP_GRID_POINTS,
    ))


def cmd_replicate(options: Options, settings: Settings) -> None:
    cfg = ReplicateConfig(**options)
    seed = resolve_seed(options)
    result = dependencies.get_replicate_use_case().execute(ReplicateInput(
        setting=resolve_setting(cfg),
        design=Design(cfg.design),
        ci_assumed=cfg.ci,
        n=cfg.n,
        n_reps=cfg.reps,
        seed=seed,
        output_dir=output_dir(options, settings),
        algorithm=cfg.algorithm,
        priors=cfg.to_priors(cfg.ci),
        chain=cfg.to_chain(seed),
        noise=noise_family(cfg),
        scale_by_oracle=cfg.scale_by_oracle,
        threads=cfg.threads or settings.THREADS,
        oracle_n=settings.ORACLE_N,
    ))
    logger.info(f"Replications finished: {result.n_reps - result.n_failed} of {result.n_reps} succeeded")


def cmd_sensitivity(options: Options, settings: Settings) -> None:
    cfg = SensitivityConfig(**options)
    seed = resolve_seed(options)
    dependencies.get_sensitivity_use_case().execute(SensitivityInput(
        source=DataSource(data_path=cfg.data, setting=resolve_setting(cfg), n=cfg.n, seed=seed),
        design=Design(cfg.design),
        ci_assumed=cfg.ci,
        output_dir=output_dir(options, settings),
        settings=cfg.scan_settings(),
        algorithm=cfg.algorithm,
        priors=cfg.to_priors(cfg.ci),
        chain=cfg.to_chain(child_seed(seed)),
        at=cfg.points(),
    ))


COMMANDS: Dict[str, Callable[[Options, Settings], None]] = {
    "simulate": cmd_simulate,
    "fit": cmd_fit,
    "cep": cmd_cep,
    "replicate": cmd_replicate,
    "sensitivity": cmd_sensitivity,
}


# ========== Parser ==========

def _add_setting_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--setting", help=f"Named setting ({', '.join(SETTING_NAMES)})")
    parser.add_argument("--params", type=Path, help="key = value file with custom generator parameters")
    parser.add_argument("--n", type=int, help="Sample size (even)")


def _add_noise_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--noise", choices=["gaussian", "t", "gamma"])
    parser.add_argument("--df", type=float, help="Degrees of freedom of the t errors")
    parser.add_argument("--shape", type=float, help="Shape of the gamma errors")


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--design", type=int, choices=[1, 2, 3, 4],
                        help="1 original-marginal, 2 original-conditional, 3 diff-marginal, 4 diff-conditional")
    parser.add_argument("--ci", action=argparse.BooleanOptionalAction, default=None,
                        help="Assume S(1) independent of T(0) given T(1)")
    parser.add_argument("--algorithm", choices=["observed", "imputation"])
    for target in ("thetaT", "theta10", "theta11"):
        parser.add_argument(f"--prior-{target}", dest=f"prior_{target}",
                            help="uniform(lo,hi), beta(a,b,lo,hi) or point(v)")
    parser.add_argument("--n-iter", type=int)
    parser.add_argument("--burn-in", type=int)
    parser.add_argument("--grid-coarse", type=int)
    parser.add_argument("--grid-fine", type=int)
    parser.add_argument("--fine-fraction", type=float)
    parser.add_argument("--at", action="append", help="Covariate values name=value,... (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surrocep", description="Bayesian principal surrogate validation")
    parser.add_argument("--config", type=Path, help="key = value configuration file")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    parser.add_argument("--seed", type=int)
    parser.add_argument("--output-dir", type=Path)
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="Simulate a trial from a setting")
    _add_setting_flags(simulate)
    _add_noise_flags(simulate)
    simulate.add_argument("--write-full", action=argparse.BooleanOptionalAction, default=None,
                          help="Also write the complete counterfactual table")

    fit = sub.add_parser("fit", help="Fit the surrogacy model")
    fit.add_argument("--data", type=Path)
    _add_setting_flags(fit)
    _add_model_flags(fit)

    cep = sub.add_parser("cep", help="Plot CEP curves from a draw file")
    cep.add_argument("--draws", type=Path)
    cep.add_argument("--data", type=Path, help="Trial data for the S(1) density overlay")
    cep.add_argument("--at", action="append", help="Covariate values name=value,... (repeatable)")

    replicate = sub.add_parser("replicate", help="Replicate a setting and summarize operating characteristics")
    _add_setting_flags(replicate)
    _add_noise_flags(replicate)
    _add_model_flags(replicate)
    replicate.add_argument("--reps", type=int)
    replicate.add_argument("--scale-by-oracle", action=argparse.BooleanOptionalAction, default=None)
    replicate.add_argument("--threads", type=int, help="Worker processes (default SURROCEP_THREADS)")

    sensitivity = sub.add_parser("sensitivity", help="Scan fixed thetaT values and priors")
    sensitivity.add_argument("--data", type=Path)
    _add_setting_flags(sensitivity)
    _add_model_flags(sensitivity)
    sensitivity.add_argument("--values", type=float, nargs="+", help="Fixed thetaT values in (-1, 1)")
    sensitivity.add_argument("--priors", nargs="+", help="thetaT priors, e.g. beta(5,6,-0.4,1)")
    return parser


def load_settings() -> Settings:
    """
    Raises:
        ConfigurationError: a SURROCEP_* variable or .env entry fails validation
    """
    try:
        return get_settings()
    except ValidationError as e:
        fields = ", ".join(f"SURROCEP_{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ConfigurationError(f"Invalid environment settings ({fields})") from e


def collect_options(args: argparse.Namespace, settings: Settings) -> Tuple[str, Options]:
    """Settings defaults < config file < command-line flags"""
    defaults: Options = {
        "n_iter": settings.N_ITER,
        "burn_in": settings.BURN_IN,
        "grid_coarse": settings.GRID_COARSE,
        "grid_fine": settings.GRID_FINE,
        "fine_fraction": settings.FINE_FRACTION,
    }
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    options = merge_options(merge_options(defaults, read_config(args.config)), flags)
    return args.command, options


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point; returns the process exit code

    0 success, 2 user/config error, 3 numerical/sampler failure.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    def run() -> None:
        settings = load_settings()
        setup_logging(log_level=args.log_level or settings.LOG_LEVEL)
        command, options = collect_options(args, settings)
        logger.info(f"Running {command} ({settings.APP_NAME} {settings.VERSION})")
        COMMANDS[command](options, settings)

    return run_guarded(run)
