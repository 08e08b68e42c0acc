"""
Simulation Entities - Escenarios generadores de datos y familias de ruido
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from .covariate_model import BernoulliCovariate, CovariateModel, NormalCovariate
from .gaussian import CorrelationState
from .model_spec import Design, ModelSpec


class CovariateKind(str, Enum):
    NORMAL = "normal"
    BERNOULLI = "bernoulli"
    UNIFORM = "uniform"
    SQUARE_OF = "square_of"


@dataclass(frozen=True)
class CovariateSource:
    """
    Cómo se genera una columna de X

    params: NORMAL (mean, sd), BERNOULLI (p,), UNIFORM (lo, hi), SQUARE_OF () con source
    """
    name: str
    kind: CovariateKind
    params: Tuple[float, ...] = ()
    source: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", CovariateKind(self.kind))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        expected = {
            CovariateKind.NORMAL: 2,
            CovariateKind.BERNOULLI: 1,
            CovariateKind.UNIFORM: 2,
            CovariateKind.SQUARE_OF: 0,
        }[self.kind]
        if len(self.params) != expected:
            raise ValueError(f"La covariable {self.name} ({self.kind.value}) requiere {expected} parámetros")
        if self.kind is CovariateKind.SQUARE_OF and not self.source:
            raise ValueError(f"La covariable {self.name} necesita la columna de origen")
        if self.kind is CovariateKind.NORMAL and not self.params[1] > 0:
            raise ValueError("sd debe ser positiva")
        if self.kind is CovariateKind.BERNOULLI and not 0.0 <= self.params[0] <= 1.0:
            raise ValueError("p debe estar en [0, 1]")
        if self.kind is CovariateKind.UNIFORM and not self.params[0] < self.params[1]:
            raise ValueError("La uniforme requiere lo < hi")


class NoiseKind(str, Enum):
    GAUSSIAN = "gaussian"
    STUDENT_T = "t"
    GAMMA = "gamma"


@dataclass(frozen=True)
class NoiseFamily:
    """
    Familia del error de los resultados

    Las variantes t y gamma se escalan para igualar media y covarianza del
    modelo gaussiano.
    """
    kind: NoiseKind = NoiseKind.GAUSSIAN
    df: float = 5.0
    shape: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind(self.kind))
        if self.kind is NoiseKind.STUDENT_T and not self.df > 2:
            raise ValueError("Los grados de libertad deben ser > 2 para igualar la varianza")
        if self.kind is NoiseKind.GAMMA and not self.shape > 0:
            raise ValueError("El parámetro de forma debe ser positivo")

    @classmethod
    def gaussian(cls) -> "NoiseFamily":
        return cls(NoiseKind.GAUSSIAN)

    @classmethod
    def student_t(cls, df: float = 5.0) -> "NoiseFamily":
        return cls(NoiseKind.STUDENT_T, df=df)

    @classmethod
    def gamma(cls, shape: float = 2.0) -> "NoiseFamily":
        return cls(NoiseKind.GAMMA, shape=shape)

    @property
    def label(self) -> str:
        if self.kind is NoiseKind.STUDENT_T:
            return f"t({self.df:g})"
        if self.kind is NoiseKind.GAMMA:
            return f"gamma({self.shape:g})"
        return "gaussian"


@dataclass(frozen=True)
class SimSetting:
    """
    Entidad de dominio: Escenario de simulación

    Parámetros del modelo condicional en X para (S(1), T(0), T(1)), las
    fuentes de las covariables y la familia de ruido. Con enforce_ci, los
    datos se generan con theta10 = thetaT * theta11 y el campo theta10 solo
    conserva el valor tabulado.
    """
    name: str
    intercepts: Tuple[float, float, float]
    slopes: Tuple[Tuple[float, ...], ...]
    sds: Tuple[float, float, float]
    theta11: float
    thetaT: float
    theta10: float
    covariates: Tuple[CovariateSource, ...]
    enforce_ci: bool = True
    baseline_name: Optional[str] = None
    noise: NoiseFamily = field(default_factory=NoiseFamily.gaussian)
    reported: Dict[str, float] = field(default_factory=dict, compare=False)
    description: str = ""

    def __post_init__(self):
        """Validación del escenario"""
        object.__setattr__(self, "intercepts", tuple(float(v) for v in self.intercepts))
        object.__setattr__(self, "slopes", tuple(tuple(float(v) for v in row) for row in self.slopes))
        object.__setattr__(self, "sds", tuple(float(v) for v in self.sds))
        object.__setattr__(self, "covariates", tuple(self.covariates))
        if len(self.intercepts) != 3 or len(self.sds) != 3 or len(self.slopes) != 3:
            raise ValueError("Se requieren tres resultados (S1, T0, T1)")
        if not all(s > 0 for s in self.sds):
            raise ValueError(f"Las desviaciones estándar deben ser positivas: {self.sds}")
        p = len(self.covariates)
        if any(len(row) != p for row in self.slopes):
            raise ValueError("Cada resultado necesita una pendiente por covariable")
        names = [c.name for c in self.covariates]
        if len(set(names)) != p:
            raise ValueError("Nombres de covariables duplicados")
        for source in self.covariates:
            if source.kind is CovariateKind.SQUARE_OF and source.source not in names[: names.index(source.name)]:
                raise ValueError(f"{source.name} debe referirse a una covariable anterior")
        if self.baseline_name is not None and self.baseline_name not in names:
            raise ValueError(f"La covariable basal '{self.baseline_name}' no está definida")
        # valida rango y definición positiva
        self.correlation()

    @property
    def covariate_names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.covariates)

    def correlation(self) -> CorrelationState:
        """Correlaciones usadas para generar"""
        if self.enforce_ci:
            return CorrelationState.constrained(self.theta11, self.thetaT)
        return CorrelationState(theta11=self.theta11, theta10=self.theta10, thetaT=self.thetaT)

    def covariate_model(self) -> Optional[CovariateModel]:
        """Distribución paramétrica de X cuando es escalar"""
        if len(self.covariates) != 1:
            return None
        source = self.covariates[0]
        if source.kind is CovariateKind.NORMAL:
            return NormalCovariate(mean=source.params[0], sd=source.params[1])
        if source.kind is CovariateKind.BERNOULLI:
            return BernoulliCovariate(p=source.params[0])
        return None

    def model_spec(self) -> ModelSpec:
        """Modelo generador en la escala original, condicional en X"""
        return ModelSpec(
            design=Design.ORIGINAL_CONDITIONAL,
            intercepts=np.array(self.intercepts),
            slopes=np.array(self.slopes, dtype=np.float64).reshape(3, len(self.covariates)),
            sds=np.array(self.sds),
            corr=self.correlation(),
            ci_assumed=self.enforce_ci,
            covariate_names=self.covariate_names,
            covariate_model=self.covariate_model(),
            baseline_name=self.baseline_name,
        )
