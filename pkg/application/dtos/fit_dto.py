"""
Fit DTOs - Data Transfer Objects para ajustes, curvas CEP y sensibilidad
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Union

from core.exceptions import ConfigurationError
from domain.entities.model_spec import Design
from domain.entities.prior import ChainConfig, PriorSet, PriorSpec
from domain.entities.simulation import SimSetting


@dataclass
class DataSource:
    """
    Origen de los datos: un archivo o un escenario simulado (excluyentes)
    """
    data_path: Optional[Path] = None
    setting: Optional[SimSetting] = None
    n: int = 100
    seed: int = 0

    def __post_init__(self):
        if (self.data_path is None) == (self.setting is None):
            raise ConfigurationError("Provide exactly one of a data file or a setting")


@dataclass
class FitInput:
    """
    DTO de entrada para un ajuste bayesiano
    """
    source: DataSource
    design: Design
    ci_assumed: bool
    output_dir: Path
    algorithm: str = "observed"
    priors: Optional[PriorSet] = None
    chain: ChainConfig = field(default_factory=ChainConfig)
    at: Sequence[Mapping[str, float]] = ()


@dataclass
class FitOutput:
    """DTO de salida del ajuste"""
    summary: List[Dict]
    draws_path: Path
    summary_path: Path
    convergence_paths: Sequence[Path] = ()
    flagged: Sequence[str] = ()
    treatment_effect: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "summary": self.summary,
            "draws_path": str(self.draws_path),
            "summary_path": str(self.summary_path),
            "convergence_paths": [str(p) for p in self.convergence_paths],
            "flagged": list(self.flagged),
            "treatment_effect": self.treatment_effect,
        }


@dataclass
class CepInput:
    """
    DTO de entrada para graficar curvas CEP desde un archivo de draws
    """
    draws_path: Path
    output_dir: Path
    at: Sequence[Mapping[str, float]] = ()
    data_path: Optional[Path] = None
    grid_points: int = 41


@dataclass
class CepOutput:
    """DTO de salida de las curvas CEP"""
    plot_path: Path
    table_path: Path
    conditioning: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "plot_path": str(self.plot_path),
            "table_path": str(self.table_path),
            "conditioning": self.conditioning,
        }


@dataclass
class SensitivityInput:
    """
    DTO de entrada para el barrido de thetaT (valores fijos y/o priors)
    """
    source: DataSource
    design: Design
    ci_assumed: bool
    output_dir: Path
    settings: Sequence[Union[float, PriorSpec]] = ()
    algorithm: str = "observed"
    priors: Optional[PriorSet] = None
    chain: ChainConfig = field(default_factory=ChainConfig)
    at: Sequence[Mapping[str, float]] = ()


@dataclass
class SensitivityOutput:
    """DTO de salida del barrido"""
    rows: List[Dict]
    table_path: Path
    plot_path: Path

    def to_dict(self) -> dict:
        return {"rows": self.rows, "table_path": str(self.table_path), "plot_path": str(self.plot_path)}
