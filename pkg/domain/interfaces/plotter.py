"""
Interface: Plotter

Contrato abstracto para los gráficos SVG.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from domain.entities.metrics import CepCurve


class IPlotter(ABC):
    """Interfaz para los gráficos"""

    @abstractmethod
    def plot_cep(self, curves: Sequence[CepCurve], path: Path,
                 s1_sample: Optional[np.ndarray] = None) -> Path:
        """
        Curvas CEP con banda creíble, referencia en 0 y densidad de S(1)
        """
        pass

    @abstractmethod
    def plot_sensitivity(self, rows: List[Dict], path: Path) -> Path:
        """Estimaciones de gamma0/gamma1 por valor o prior de thetaT"""
        pass
