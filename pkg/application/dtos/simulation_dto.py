"""
Simulation DTOs - Data Transfer Objects para simulación y réplicas
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from domain.entities.model_spec import Design
from domain.entities.prior import ChainConfig, PriorSet
from domain.entities.simulation import NoiseFamily, SimSetting


@dataclass
class SimulateInput:
    """
    DTO de entrada para generar un ensayo simulado
    """
    setting: SimSetting
    n: int
    seed: int
    output_dir: Path
    noise: Optional[NoiseFamily] = None
    write_full: bool = False


@dataclass
class SimulateOutput:
    """DTO de salida con las rutas escritas"""
    setting: str
    n: int
    n_treated: int
    data_path: Path
    counterfactual_path: Optional[Path] = None

    def to_dict(self) -> dict:
        return {
            "setting": self.setting,
            "n": self.n,
            "n_treated": self.n_treated,
            "data_path": str(self.data_path),
            "counterfactual_path": None if self.counterfactual_path is None else str(self.counterfactual_path),
        }


@dataclass
class ReplicateInput:
    """
    DTO de entrada para un estudio de réplicas
    """
    setting: SimSetting
    design: Design
    ci_assumed: bool
    n: int
    n_reps: int
    seed: int
    output_dir: Path
    algorithm: str = "observed"
    priors: Optional[PriorSet] = None
    chain: ChainConfig = field(default_factory=ChainConfig)
    noise: Optional[NoiseFamily] = None
    scale_by_oracle: bool = False
    threads: int = 1
    oracle_n: int = 200_000

    def is_valid(self) -> bool:
        """Al menos una réplica y tamaño de muestra par"""
        return self.n_reps >= 1 and self.n >= 2 and self.n % 2 == 0


@dataclass
class ReplicateOutput:
    """DTO de salida del estudio de réplicas"""
    n_reps: int
    n_failed: int
    summary_path: Path
    runs_path: Path
    estimates: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n_reps": self.n_reps,
            "n_failed": self.n_failed,
            "summary_path": str(self.summary_path),
            "runs_path": str(self.runs_path),
            "estimates": self.estimates,
        }
