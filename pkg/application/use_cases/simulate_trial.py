"""
Simulate Trial Use Case - Genera un ensayo simulado y lo escribe a disco
"""
import logging

from application.dtos.simulation_dto import SimulateInput, SimulateOutput
from domain.interfaces.dataset_store import IDatasetStore

from .data_source import TrialGenerator

logger = logging.getLogger(__name__)


class SimulateTrialUseCase:
    """
    Caso de uso: Simular un ensayo a partir de un escenario

    La tabla contrafactual completa solo se escribe si se pide.
    """

    def __init__(self, dataset_store: IDatasetStore, generator: TrialGenerator):
        self._dataset_store = dataset_store
        self._generator = generator

    def execute(self, input_dto: SimulateInput) -> SimulateOutput:
        logger.info(f"[STEP 1] Simulating setting {input_dto.setting.name} (n={input_dto.n}, seed={input_dto.seed})")
        try:
            table, data = self._generator(input_dto.setting, input_dto.n, input_dto.seed, input_dto.noise)
            data_path = self._dataset_store.write(data, input_dto.output_dir / "trial_data.csv")
            full_path = None
            if input_dto.write_full:
                full_path = self._dataset_store.write_counterfactuals(
                    table, input_dto.output_dir / "counterfactuals.csv"
                )
            logger.info(f"[STEP 2] Wrote {data.n} records to {data_path}")
            return SimulateOutput(
                setting=input_dto.setting.name,
                n=data.n,
                n_treated=data.n_treated,
                data_path=data_path,
                counterfactual_path=full_path,
            )
        except Exception as e:
            logger.error(f"Error simulating trial: {e}", exc_info=True)
            raise
