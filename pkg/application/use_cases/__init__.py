"""Use Cases - Application Business Logic"""

from .compute_cep import ComputeCepUseCase
from .fit_surrogacy import FitSurrogacyUseCase
from .run_replications import RunReplicationsUseCase
from .sensitivity_analysis import SensitivityAnalysisUseCase
from .simulate_trial import SimulateTrialUseCase

__all__ = [
    "ComputeCepUseCase",
    "FitSurrogacyUseCase",
    "RunReplicationsUseCase",
    "SensitivityAnalysisUseCase",
    "SimulateTrialUseCase",
]
