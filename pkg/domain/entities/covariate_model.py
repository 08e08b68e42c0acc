"""
Covariate Models - Distribución de las covariables basales X
"""
from dataclasses import dataclass
from typing import Union

import numpy as np


@dataclass(frozen=True)
class NormalCovariate:
    """X ~ Normal(mean, sd^2), covariable escalar"""
    mean: float
    sd: float

    def __post_init__(self):
        if not self.sd > 0:
            raise ValueError("La desviación estándar de X debe ser positiva")

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class BernoulliCovariate:
    """X ~ Bernoulli(p), covariable escalar binaria"""
    p: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p debe estar en [0, 1]")

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class EmpiricalCovariate:
    """
    Distribución empírica de X (una fila por sujeto)

    Se usa para covariables vectoriales y para promediar sobre la muestra observada.
    """
    sample: np.ndarray

    def __post_init__(self):
        sample = np.array(self.sample, dtype=np.float64, copy=True)
        if sample.ndim == 1:
            sample = sample[:, None]
        if sample.ndim != 2 or sample.shape[0] == 0:
            raise ValueError("La muestra empírica debe tener al menos una fila")
        if not np.all(np.isfinite(sample)):
            raise ValueError("La muestra empírica contiene valores no finitos")
        sample.setflags(write=False)
        object.__setattr__(self, "sample", sample)

    @property
    def dim(self) -> int:
        return int(self.sample.shape[1])


CovariateModel = Union[NormalCovariate, BernoulliCovariate, EmpiricalCovariate]
