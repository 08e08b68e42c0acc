"""
Gaussian Entities - Distribución normal conjunta y estado de correlaciones
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from core.exceptions import NotPositiveDefinite

SYMMETRY_TOLERANCE = 1e-10


def _frozen_array(values, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True, ndmin=ndim)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class GaussianJoint:
    """
    Entidad de dominio: Distribución normal multivariada

    Contiene la media y la covarianza de los resultados potenciales
    (S(1), T(0), T(1)) o de su extensión con la covariable X.
    """
    mean: np.ndarray
    covariance: np.ndarray
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        """Validación post-inicialización"""
        mean = _frozen_array(self.mean, 1)
        covariance = _frozen_array(self.covariance, 2)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", covariance)

        if mean.ndim != 1:
            raise ValueError("La media debe ser un vector")
        if covariance.shape != (mean.size, mean.size):
            raise ValueError("La covarianza no coincide con la dimensión de la media")
        if self.labels is not None and len(self.labels) != mean.size:
            raise ValueError("Las etiquetas no coinciden con la dimensión")

        scale = max(1.0, float(np.max(np.abs(covariance))))
        if not np.allclose(covariance, covariance.T, atol=SYMMETRY_TOLERANCE * scale, rtol=0.0):
            raise ValueError("La covarianza debe ser simétrica")
        if np.min(np.linalg.eigvalsh(covariance)) <= 0.0:
            raise NotPositiveDefinite("Covariance of the Gaussian joint is not positive definite")

    @property
    def dim(self) -> int:
        """Dimensión de la distribución"""
        return int(self.mean.size)

    @property
    def sds(self) -> np.ndarray:
        """Desviaciones estándar marginales"""
        return np.sqrt(np.diag(self.covariance))

    def correlation(self) -> np.ndarray:
        """Matriz de correlación asociada"""
        sds = self.sds
        return self.covariance / np.outer(sds, sds)

    def marginal(self, indices) -> "GaussianJoint":
        """Distribución marginal sobre un subconjunto de índices"""
        idx = list(indices)
        labels = tuple(self.labels[i] for i in idx) if self.labels else None
        return GaussianJoint(self.mean[idx], self.covariance[np.ix_(idx, idx)], labels)

    def linear_map(self, matrix, labels: Optional[Tuple[str, ...]] = None) -> "GaussianJoint":
        """Distribución de A·Y para una matriz A"""
        a = np.asarray(matrix, dtype=np.float64)
        return GaussianJoint(a @ self.mean, a @ self.covariance @ a.T, labels)


@dataclass(frozen=True)
class CorrelationState:
    """
    Entidad de dominio: Correlaciones (condicionales) entre S(1), T(0), T(1)

    Orden de la matriz: (S(1), T(0), T(1)).
    theta11 = corr(S(1), T(1))  -> identificado
    theta10 = corr(S(1), T(0))  -> no identificado
    thetaT  = corr(T(0), T(1))  -> no identificado
    """
    theta11: float
    theta10: float
    thetaT: float
    identified: Dict[str, bool] = field(
        default_factory=lambda: {"theta11": True, "theta10": False, "thetaT": False},
        compare=False,
    )

    def __post_init__(self):
        """Validación de rango y definición positiva"""
        for name in ("theta11", "theta10", "thetaT"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not np.isfinite(value) or not (-1.0 < value < 1.0):
                raise ValueError(f"{name} debe estar en (-1, 1), recibido {value}")
        if not self.is_positive_definite():
            raise NotPositiveDefinite(
                f"Correlation state (theta11={self.theta11}, theta10={self.theta10}, "
                f"thetaT={self.thetaT}) is not positive definite"
            )

    @classmethod
    def constrained(cls, theta11: float, thetaT: float) -> "CorrelationState":
        """Estado bajo independencia condicional: theta10 = thetaT * theta11"""
        return cls(theta11=theta11, theta10=thetaT * theta11, thetaT=thetaT)

    def matrix(self) -> np.ndarray:
        """Matriz de correlación 3x3"""
        return np.array([
            [1.0, self.theta10, self.theta11],
            [self.theta10, 1.0, self.thetaT],
            [self.theta11, self.thetaT, 1.0],
        ])

    def is_positive_definite(self) -> bool:
        """Verifica que la matriz sea definida positiva"""
        return bool(np.min(np.linalg.eigvalsh(self.matrix())) > 0.0)

    def satisfies_ci(self) -> bool:
        """Verifica theta10 == thetaT * theta11 (exacto)"""
        return self.theta10 == self.thetaT * self.theta11
