"""
Posterior Entities - Draws retenidos de una cadena y su reporte de convergencia
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .gaussian import CorrelationState
from .model_spec import Design

MCSE_BATCHES = 20


@dataclass(frozen=True)
class ParameterSummary:
    """Resumen posterior de una columna"""
    name: str
    mean: float
    sd: float
    q025: float
    q975: float
    mcse: float

    def interval(self) -> Tuple[float, float]:
        """Intervalo creíble de colas iguales al 95%"""
        return self.q025, self.q975

    def covers(self, value: float) -> bool:
        return self.q025 <= value <= self.q975


def batch_means_mcse(values: np.ndarray, n_batches: int = MCSE_BATCHES) -> float:
    """Error estándar de Monte Carlo por medias de lotes"""
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    if n < 2:
        return float("nan")
    if n < 2 * n_batches:
        return float(np.std(values, ddof=1) / np.sqrt(n))
    size = n // n_batches
    means = values[: size * n_batches].reshape(n_batches, size).mean(axis=1)
    return float(np.std(means, ddof=1) / np.sqrt(n_batches))


@dataclass(frozen=True)
class PosteriorDraws:
    """
    Entidad de dominio: Draws posteriores retenidos

    Una fila por iteración retenida; columnas = parámetros del modelo
    seguidos de las cantidades derivadas (gamma0, gamma1, ...).
    """
    names: Tuple[str, ...]
    values: np.ndarray
    design: Design
    covariate_names: Tuple[str, ...] = ()
    ci_assumed: bool = False
    algorithm: str = "observed"
    seed: Optional[int] = None
    imputed: Optional[Tuple[np.ndarray, ...]] = None
    metadata: Dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        """Validación de forma"""
        values = np.array(self.values, dtype=np.float64, copy=True, ndmin=2)
        names = tuple(self.names)
        if values.shape[1] != len(names):
            raise ValueError("El número de columnas no coincide con los nombres")
        if len(set(names)) != len(names):
            raise ValueError("Nombres de parámetros duplicados")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "design", Design(self.design))
        object.__setattr__(self, "covariate_names", tuple(self.covariate_names))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def has(self, name: str) -> bool:
        return name in self.names

    def column(self, name: str) -> np.ndarray:
        """Serie de draws de un parámetro"""
        try:
            return self.values[:, self.names.index(name)]
        except ValueError:
            raise KeyError(f"Unknown parameter '{name}'") from None

    def gamma_names(self) -> Tuple[str, ...]:
        """Columnas derivadas gamma0/gamma1"""
        return tuple(n for n in self.names if n.startswith("gamma"))

    def summarize(self, name: str) -> ParameterSummary:
        values = self.column(name)
        q025, q975 = np.quantile(values, [0.025, 0.975])
        sd = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        return ParameterSummary(
            name=name,
            mean=float(np.mean(values)),
            sd=sd,
            q025=float(q025),
            q975=float(q975),
            mcse=batch_means_mcse(values),
        )

    def summary(self, names: Optional[Tuple[str, ...]] = None) -> List[ParameterSummary]:
        """Resumen posterior por columna"""
        return [self.summarize(n) for n in (names or self.names)]

    def correlation_states(self) -> Iterator[CorrelationState]:
        """Estados de correlación de cada draw (valida definición positiva)"""
        cols = [self.column(n) for n in ("theta11", "theta10", "thetaT")]
        for t11, t10, tt in zip(*cols):
            yield CorrelationState(theta11=t11, theta10=t10, thetaT=tt)


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Reporte de convergencia: series de traza y R-hat dividido por parámetro
    """
    names: Tuple[str, ...]
    iterations: np.ndarray
    trace: np.ndarray
    rhat: Dict[str, float]
    threshold: float = 1.1

    @property
    def flagged(self) -> Tuple[str, ...]:
        """Parámetros con R-hat por encima del umbral"""
        return tuple(n for n in self.names if not self.rhat[n] <= self.threshold)

    def converged(self) -> bool:
        return not self.flagged
