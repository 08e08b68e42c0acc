"""
Validation Metrics - Cantidades de validación del sustituto y curvas CEP
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np


class Scope(str, Enum):
    """Alcance de las métricas: marginal o condicional en X = x"""
    MARGINAL = "marginal"
    CONDITIONAL = "conditional"


class Verdict(str, Enum):
    """Veredicto de validez del sustituto"""
    VALID = "valid"
    INVALID = "invalid"


@dataclass(frozen=True)
class ValidationMetrics:
    """
    Entidad de dominio: Intercepto y pendiente de la curva CEP

    gamma0 = 0 (necesidad causal promedio) y gamma1 != 0 (suficiencia causal
    promedio) definen un sustituto válido.
    """
    gamma0: float
    gamma1: float
    scope: Scope = Scope.MARGINAL
    x: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "scope", Scope(self.scope))
        if self.scope is Scope.CONDITIONAL and self.x is None:
            raise ValueError("Las métricas condicionales requieren el valor de X")
        if self.x is not None:
            object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if not (np.isfinite(self.gamma0) and np.isfinite(self.gamma1)):
            raise ValueError("gamma0 y gamma1 deben ser finitos")

    def expected_difference(self, s) -> np.ndarray:
        """E(T(1) - T(0) | S(1) = s) = gamma0 + gamma1 * s"""
        return self.gamma0 + self.gamma1 * np.asarray(s, dtype=np.float64)


@dataclass(frozen=True)
class CepCurve:
    """
    Entidad de dominio: Curva de predictividad del efecto causal

    Para cada s de la rejilla: E(T(1) - T(0) | S(1) - S(0) = s) con banda
    creíble puntual del 95%.
    """
    s_grid: np.ndarray
    expected_diff: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    conditioning: str = "marginal"
    x: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        """Validación de la rejilla y de la banda"""
        arrays = {}
        for name in ("s_grid", "expected_diff", "lower", "upper"):
            array = np.array(getattr(self, name), dtype=np.float64, copy=True).reshape(-1)
            array.setflags(write=False)
            arrays[name] = array
            object.__setattr__(self, name, array)
        size = arrays["s_grid"].size
        if any(a.size != size for a in arrays.values()):
            raise ValueError("Las series de la curva deben tener la misma longitud")
        if size < 2 or not np.all(np.diff(arrays["s_grid"]) > 0):
            raise ValueError("La rejilla de s debe ser estrictamente creciente")

    @classmethod
    def from_line(cls, metrics: ValidationMetrics, s_grid, conditioning: str = "marginal") -> "CepCurve":
        """Curva sin incertidumbre a partir de una sola recta"""
        values = metrics.expected_difference(s_grid)
        return cls(s_grid, values, values, values, conditioning, metrics.x)

    def linearity_error(self) -> float:
        """Desviación máxima respecto de la recta ajustada"""
        coefs = np.polyfit(self.s_grid, self.expected_diff, 1)
        return float(np.max(np.abs(np.polyval(coefs, self.s_grid) - self.expected_diff)))


@dataclass(frozen=True)
class TreatmentEffect:
    """Efecto del tratamiento estimado por mínimos cuadrados"""
    design: int
    estimate: float
    se: float
    ci_low: float
    ci_high: float
    n: int
