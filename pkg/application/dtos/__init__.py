"""Data Transfer Objects"""

from .fit_dto import CepInput, CepOutput, DataSource, FitInput, FitOutput, SensitivityInput, SensitivityOutput
from .simulation_dto import ReplicateInput, ReplicateOutput, SimulateInput, SimulateOutput

__all__ = [
    "CepInput",
    "CepOutput",
    "DataSource",
    "FitInput",
    "FitOutput",
    "SensitivityInput",
    "SensitivityOutput",
    "ReplicateInput",
    "ReplicateOutput",
    "SimulateInput",
    "SimulateOutput",
]
