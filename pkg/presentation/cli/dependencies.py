"""
Dependency wiring for the CLI commands

Factory functions build the use cases with their infrastructure adapters.
"""
from functools import lru_cache

from application.use_cases.compute_cep import ComputeCepUseCase
from application.use_cases.fit_surrogacy import FitSurrogacyUseCase
from application.use_cases.run_replications import RunReplicationsUseCase
from application.use_cases.sensitivity_analysis import SensitivityAnalysisUseCase
from application.use_cases.simulate_trial import SimulateTrialUseCase
from infrastructure.sampling import SAMPLERS, convergence_report, sensitivity_scan
from infrastructure.simulation import generate, run_replications
from infrastructure.storage import CsvDatasetStore, CsvResultWriter, MatplotlibPlotter


# ========== Infrastructure Dependencies ==========

@lru_cache()
def get_dataset_store() -> CsvDatasetStore:
    """Singleton: lectura y escritura de datos del ensayo"""
    return CsvDatasetStore()


@lru_cache()
def get_result_writer() -> CsvResultWriter:
    """Singleton: tablas de resultados"""
    return CsvResultWriter()


@lru_cache()
def get_plotter() -> MatplotlibPlotter:
    """Singleton: gráficos SVG"""
    return MatplotlibPlotter()


# ========== Use Case Dependencies ==========

def get_simulate_use_case() -> SimulateTrialUseCase:
    return SimulateTrialUseCase(dataset_store=get_dataset_store(), generator=generate)


def get_fit_use_case() -> FitSurrogacyUseCase:
    return FitSurrogacyUseCase(
        dataset_store=get_dataset_store(),
        result_writer=get_result_writer(),
        samplers=SAMPLERS,
        generator=generate,
        convergence=convergence_report,
    )


def get_cep_use_case() -> ComputeCepUseCase:
    return ComputeCepUseCase(
        dataset_store=get_dataset_store(),
        result_writer=get_result_writer(),
        plotter=get_plotter(),
    )


def get_replicate_use_case() -> RunReplicationsUseCase:
    return RunReplicationsUseCase(result_writer=get_result_writer(), replicator=run_replications)


def get_sensitivity_use_case() -> SensitivityAnalysisUseCase:
    return SensitivityAnalysisUseCase(
        dataset_store=get_dataset_store(),
        result_writer=get_result_writer(),
        plotter=get_plotter(),
        samplers=SAMPLERS,
        generator=generate,
        scanner=sensitivity_scan,
    )
