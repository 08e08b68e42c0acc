"""
Sensitivity Analysis Use Case - Barrido del parámetro no identificado thetaT
"""
import logging
from typing import Callable, Dict, List, Mapping

from application.dtos.fit_dto import SensitivityInput, SensitivityOutput
from core.exceptions import ConfigurationError
from domain.entities.model_spec import ModelSpec
from domain.interfaces.dataset_store import IDatasetStore
from domain.interfaces.plotter import IPlotter
from domain.interfaces.result_writer import IResultWriter

from .data_source import SamplerFactory, TrialGenerator, covariate_points, load_dataset, resolve_sampler

logger = logging.getLogger(__name__)

Scanner = Callable[..., List[Dict]]


class SensitivityAnalysisUseCase:
    """
    Caso de uso: Sensibilidad de gamma0/gamma1 a thetaT

    Una cadena por valor fijo o prior de thetaT; tabla y gráfico de las
    estimaciones ordenadas por thetaT.
    """

    def __init__(
        self,
        dataset_store: IDatasetStore,
        result_writer: IResultWriter,
        plotter: IPlotter,
        samplers: Mapping[str, SamplerFactory],
        generator: TrialGenerator,
        scanner: Scanner,
    ):
        self._dataset_store = dataset_store
        self._result_writer = result_writer
        self._plotter = plotter
        self._samplers = samplers
        self._generator = generator
        self._scanner = scanner

    def execute(self, input_dto: SensitivityInput) -> SensitivityOutput:
        if not input_dto.settings:
            raise ConfigurationError("Sensitivity analysis needs at least one thetaT value or prior")
        logger.info(f"[STEP 1] Sensitivity scan over {len(input_dto.settings)} thetaT settings")
        try:
            data, covariate_model = load_dataset(input_dto.source, self._dataset_store, self._generator)
            spec = ModelSpec.template(
                input_dto.design,
                data.covariate_names,
                ci_assumed=input_dto.ci_assumed,
                baseline_name=data.baseline_name,
                covariate_model=covariate_model,
            )
            sampler = resolve_sampler(self._samplers, input_dto.algorithm)
            rows = self._scanner(
                data,
                spec,
                input_dto.settings,
                input_dto.chain,
                priors=input_dto.priors,
                sampler=sampler,
                x_points=covariate_points(input_dto.design, data, input_dto.at),
            )
            logger.info(f"[STEP 2] {len(rows)} chains finished")
            out = input_dto.output_dir
            table_path = self._result_writer.write_table(rows, out / "sensitivity.csv")
            plot_path = self._plotter.plot_sensitivity(rows, out / "sensitivity.svg")
            logger.info(f"[STEP 3] Sensitivity table at {table_path}")
            return SensitivityOutput(rows=rows, table_path=table_path, plot_path=plot_path)
        except Exception as e:
            logger.error(f"Error in sensitivity analysis: {e}", exc_info=True)
            raise
