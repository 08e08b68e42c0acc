"""
Interface: Result Writer

Contrato abstracto para exportar tablas de resultados.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Sequence

from domain.entities.metrics import CepCurve
from domain.entities.posterior import ConvergenceReport, PosteriorDraws
from domain.entities.replication import ReplicationSummary


class IResultWriter(ABC):
    """Interfaz para las tablas de salida"""

    @abstractmethod
    def write_summary(self, rows: List[Dict], path: Path) -> Path:
        """Resumen posterior por estimando"""
        pass

    @abstractmethod
    def write_draws(self, draws: PosteriorDraws, path: Path) -> Path:
        """Una fila por iteración retenida; encabezado = nombres de parámetros"""
        pass

    @abstractmethod
    def read_draws(self, path: Path) -> PosteriorDraws:
        """Lee un archivo de draws"""
        pass

    @abstractmethod
    def write_convergence(self, report: ConvergenceReport, rhat_path: Path, trace_path: Path) -> Sequence[Path]:
        """R-hat por parámetro y series de traza"""
        pass

    @abstractmethod
    def write_cep_curves(self, curves: Sequence[CepCurve], path: Path) -> Path:
        pass

    @abstractmethod
    def write_replications(self, summary: ReplicationSummary, summary_path: Path,
                           runs_path: Path, scaled: bool = False) -> Sequence[Path]:
        pass

    @abstractmethod
    def write_table(self, rows: List[Dict], path: Path) -> Path:
        """Tabla genérica de filas"""
        pass
