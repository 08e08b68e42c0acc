"""
Fit Surrogacy Use Case - Ajuste bayesiano y resumen de validación del sustituto
"""
import logging
from typing import Callable, Dict, List, Mapping, Optional

from application.dtos.fit_dto import FitInput, FitOutput
from core.exceptions import RankDeficient, TooFewDraws
from domain.entities.model_spec import ModelSpec
from domain.entities.posterior import ConvergenceReport, PosteriorDraws
from domain.entities.prior import PriorSet
from domain.interfaces.dataset_store import IDatasetStore
from domain.interfaces.result_writer import IResultWriter
from domain.services.surrogacy import surrogate_verdict
from domain.services.treatment_effect import treatment_effect

from .data_source import SamplerFactory, TrialGenerator, covariate_points, load_dataset, resolve_sampler

logger = logging.getLogger(__name__)

CORRELATION_COLUMNS = ("theta11", "theta10", "thetaT")


def gamma1_partner(name: str) -> Optional[str]:
    """Slope column judged together with a gamma0 column"""
    if name == "gamma0":
        return "gamma1"
    if name == "gamma0_marginal":
        return "gamma1_marginal"
    if name.startswith("gamma0["):
        return "gamma1"
    return None


def summary_rows(draws: PosteriorDraws) -> List[Dict]:
    """Posterior summary per gamma and correlation column; gamma0 rows carry the verdict"""
    rows = []
    for summary in draws.summary(draws.gamma_names() + CORRELATION_COLUMNS):
        row = {
            "estimand": summary.name,
            "mean": summary.mean,
            "sd": summary.sd,
            "q025": summary.q025,
            "q975": summary.q975,
            "mcse": summary.mcse,
            "verdict": "",
        }
        partner = gamma1_partner(summary.name)
        if partner is not None and draws.has(partner):
            slope = draws.summarize(partner)
            row["verdict"] = surrogate_verdict(summary.interval(), slope.interval()).value
        rows.append(row)
    return rows


class FitSurrogacyUseCase:
    """
    Caso de uso: Ajustar el modelo de resultados potenciales

    Orquesta el flujo completo:
    1. Leer o simular los datos
    2. Construir la plantilla del modelo y los priors
    3. Correr la cadena MCMC
    4. Resumir gamma0/gamma1 con su veredicto
    5. Diagnosticar convergencia
    6. Escribir resumen, draws y diagnósticos
    """

    def __init__(
        self,
        dataset_store: IDatasetStore,
        result_writer: IResultWriter,
        samplers: Mapping[str, SamplerFactory],
        generator: TrialGenerator,
        convergence: Callable[[PosteriorDraws], ConvergenceReport],
    ):
        self._dataset_store = dataset_store
        self._result_writer = result_writer
        self._samplers = samplers
        self._generator = generator
        self._convergence = convergence

    def execute(self, input_dto: FitInput) -> FitOutput:
        """
        Ejecuta el ajuste

        Args:
            input_dto: FitInput con el origen de datos, diseño, priors y cadena

        Returns:
            FitOutput: Resumen posterior y rutas escritas
        """
        logger.info(f"[STEP 1] Loading data for {input_dto.design.label}")
        try:
            data, covariate_model = load_dataset(input_dto.source, self._dataset_store, self._generator)
            logger.info(f"[STEP 1] {data.n} records ({data.n_treated} treated), covariates {data.covariate_names}")

            spec = ModelSpec.template(
                input_dto.design,
                data.covariate_names,
                ci_assumed=input_dto.ci_assumed,
                baseline_name=data.baseline_name,
                covariate_model=covariate_model,
            )
            priors = input_dto.priors or PriorSet.default(input_dto.ci_assumed)
            x_points = covariate_points(input_dto.design, data, input_dto.at)
            logger.info(
                f"[STEP 2] Priors: theta11 ~ {priors.theta11.label()}, thetaT ~ {priors.thetaT.label()}, "
                f"theta10 ~ {priors.theta10.label()} (ci={input_dto.ci_assumed})"
            )

            sampler = resolve_sampler(self._samplers, input_dto.algorithm)
            logger.info(f"[STEP 3] Running {input_dto.algorithm} chain ({input_dto.chain.n_iter} iterations)")
            draws = sampler.run(data, spec, priors, input_dto.chain, x_points)

            rows = summary_rows(draws)
            for row in rows:
                logger.info(
                    f"[STEP 4] {row['estimand']}: {row['mean']:.3f} (sd {row['sd']:.3f}) "
                    f"[{row['q025']:.3f}, {row['q975']:.3f}] {row['verdict']}"
                )

            report = None
            try:
                report = self._convergence(draws)
                logger.info(f"[STEP 5] Convergence flagged: {list(report.flagged) or 'none'}")
            except TooFewDraws as e:
                logger.warning(f"[STEP 5] Convergence report skipped: {e.message}")

            effect = None
            try:
                effect = treatment_effect(data, input_dto.design)
                logger.info(f"[STEP 5] Treatment effect {effect.estimate:.3f} (se {effect.se:.3f})")
            except RankDeficient as e:
                logger.warning(f"[STEP 5] Treatment effect not estimable: {e.message}")

            out = input_dto.output_dir
            summary_path = self._result_writer.write_summary(rows, out / "summary.csv")
            draws_path = self._result_writer.write_draws(draws, out / "draws.csv")
            convergence_paths = ()
            if report is not None:
                convergence_paths = self._result_writer.write_convergence(
                    report, out / "convergence.csv", out / "trace.csv"
                )
            logger.info(f"[STEP 6] Results written to {out}")

            return FitOutput(
                summary=rows,
                draws_path=draws_path,
                summary_path=summary_path,
                convergence_paths=tuple(convergence_paths),
                flagged=() if report is None else report.flagged,
                treatment_effect=None if effect is None else effect.estimate,
            )

        except Exception as e:
            logger.error(f"Error fitting surrogacy model: {e}", exc_info=True)
            raise
