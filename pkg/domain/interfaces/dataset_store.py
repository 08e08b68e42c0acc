"""
Interface: Dataset Store

Contrato abstracto para leer y escribir los datos del ensayo.
"""
from abc import ABC, abstractmethod
from pathlib import Path

from domain.entities.trial import CounterfactualTable, TrialDataset


class IDatasetStore(ABC):
    """Interfaz para la persistencia de conjuntos de datos"""

    @abstractmethod
    def read(self, path: Path) -> TrialDataset:
        """
        Lee un archivo de datos enmascarados

        Raises:
            DataFormatError: archivo vacío, columnas faltantes o faltantes inconsistentes
        """
        pass

    @abstractmethod
    def write(self, dataset: TrialDataset, path: Path) -> Path:
        """Escribe los datos enmascarados"""
        pass

    @abstractmethod
    def write_counterfactuals(self, table: CounterfactualTable, path: Path) -> Path:
        """Escribe la tabla contrafactual completa"""
        pass
