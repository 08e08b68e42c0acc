"""
Run Replications Use Case - Estudio de simulación con resumen de sesgo y cobertura
"""
import logging
from typing import Callable

from application.dtos.simulation_dto import ReplicateInput, ReplicateOutput
from core.exceptions import ConfigurationError
from domain.entities.replication import ReplicationSummary
from domain.interfaces.result_writer import IResultWriter

logger = logging.getLogger(__name__)

Replicator = Callable[..., ReplicationSummary]


class RunReplicationsUseCase:
    """
    Caso de uso: Correr réplicas independientes de un escenario

    1. Validar el pedido
    2. Correr las réplicas (en paralelo según la configuración)
    3. Escribir el resumen en formato largo y las filas por réplica
    """

    def __init__(self, result_writer: IResultWriter, replicator: Replicator):
        self._result_writer = result_writer
        self._replicator = replicator

    def execute(self, input_dto: ReplicateInput) -> ReplicateOutput:
        logger.info(
            f"[STEP 1] Replicating setting {input_dto.setting.name}: {input_dto.n_reps} x n={input_dto.n}, "
            f"{input_dto.design.label}, ci={input_dto.ci_assumed}"
        )
        if not input_dto.is_valid():
            raise ConfigurationError("Replications need n_reps >= 1 and an even sample size >= 2")
        try:
            summary = self._replicator(
                input_dto.setting,
                input_dto.n,
                input_dto.n_reps,
                input_dto.design,
                input_dto.ci_assumed,
                algorithm=input_dto.algorithm,
                priors=input_dto.priors,
                cfg=input_dto.chain,
                noise=input_dto.noise,
                seed=input_dto.seed,
                threads=input_dto.threads,
                oracle_n=input_dto.oracle_n,
            )
            for estimand in summary.estimands:
                sd = "NA" if estimand.sd is None else f"{estimand.sd:.3f}"
                logger.info(
                    f"[STEP 2] {estimand.estimand}: truth {estimand.truth:.3f}, estimate {estimand.mean_estimate:.3f}, "
                    f"SE {estimand.se:.3f}, SD {sd}, coverage {estimand.coverage:.2f}, covers 0 {estimand.covers_zero:.2f}"
                )
            out = input_dto.output_dir
            summary_path, runs_path = self._result_writer.write_replications(
                summary, out / "replication_summary.csv", out / "replication_runs.csv", input_dto.scale_by_oracle
            )
            logger.info(f"[STEP 3] {summary.n_failed} failed replications; summary at {summary_path}")
            return ReplicateOutput(
                n_reps=summary.n_reps,
                n_failed=summary.n_failed,
                summary_path=summary_path,
                runs_path=runs_path,
                estimates={e.estimand: e.mean_estimate for e in summary.estimands},
            )
        except Exception as e:
            logger.error(f"Error running replications: {e}", exc_info=True)
            raise
