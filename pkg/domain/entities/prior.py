"""
Prior Entities - Distribuciones a priori de los parámetros y configuración de la cadena
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

CORRELATION_TARGETS = ("theta11", "theta10", "thetaT")
POINT_MASS_TARGETS = ("theta10", "thetaT")


class PriorKind(str, Enum):
    """Familias de priors soportadas"""
    UNIFORM = "uniform"
    SCALED_BETA = "beta"
    POINT_MASS = "point"
    VAGUE_NORMAL = "normal"


@dataclass(frozen=True)
class PriorSpec:
    """
    Entidad de dominio: Prior de un parámetro

    params según el tipo:
        UNIFORM       -> (lo, hi)
        SCALED_BETA   -> (a, b, lo, hi)   Beta(a, b) reescalada a (lo, hi)
        POINT_MASS    -> (v,)
        VAGUE_NORMAL  -> (mean, sd)
    """
    kind: PriorKind
    params: Tuple[float, ...]
    target: Optional[str] = None

    def __post_init__(self):
        """Validación de parámetros"""
        object.__setattr__(self, "kind", PriorKind(self.kind))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        expected = {
            PriorKind.UNIFORM: 2,
            PriorKind.SCALED_BETA: 4,
            PriorKind.POINT_MASS: 1,
            PriorKind.VAGUE_NORMAL: 2,
        }[self.kind]
        if len(self.params) != expected:
            raise ValueError(f"El prior {self.kind.value} requiere {expected} parámetros")

        if self.kind is PriorKind.UNIFORM and not self.params[0] < self.params[1]:
            raise ValueError("El prior uniforme requiere lo < hi")
        if self.kind is PriorKind.SCALED_BETA:
            a, b, lo, hi = self.params
            if not (a > 0 and b > 0):
                raise ValueError("Los parámetros de forma de la Beta deben ser positivos")
            if not lo < hi:
                raise ValueError("La Beta escalada requiere lo < hi")
        if self.kind is PriorKind.VAGUE_NORMAL and not self.params[1] > 0:
            raise ValueError("La desviación del prior normal debe ser positiva")
        if self.kind is PriorKind.POINT_MASS and self.target is not None \
                and self.target not in POINT_MASS_TARGETS:
            raise ValueError(f"Prior puntual solo permitido para {POINT_MASS_TARGETS}, no {self.target}")
        if self.target in CORRELATION_TARGETS:
            lo, hi = self.bounds()
            if lo < -1.0 or hi > 1.0:
                raise ValueError(f"El prior de {self.target} debe estar contenido en [-1, 1]")
            if self.kind is PriorKind.POINT_MASS and not -1.0 < self.params[0] < 1.0:
                raise ValueError(f"El valor fijo de {self.target} debe estar en (-1, 1)")

    @classmethod
    def uniform(cls, lo: float = -1.0, hi: float = 1.0, target: Optional[str] = None) -> "PriorSpec":
        return cls(PriorKind.UNIFORM, (lo, hi), target)

    @classmethod
    def scaled_beta(cls, a: float, b: float, lo: float, hi: float, target: Optional[str] = None) -> "PriorSpec":
        return cls(PriorKind.SCALED_BETA, (a, b, lo, hi), target)

    @classmethod
    def point_mass(cls, value: float, target: Optional[str] = None) -> "PriorSpec":
        return cls(PriorKind.POINT_MASS, (value,), target)

    @classmethod
    def vague_normal(cls, mean: float = 0.0, sd: float = 100.0, target: Optional[str] = None) -> "PriorSpec":
        return cls(PriorKind.VAGUE_NORMAL, (mean, sd), target)

    def for_target(self, target: str) -> "PriorSpec":
        """Copia del prior asignada a un parámetro"""
        return PriorSpec(self.kind, self.params, target)

    @property
    def is_point_mass(self) -> bool:
        return self.kind is PriorKind.POINT_MASS

    def bounds(self) -> Tuple[float, float]:
        """Soporte del prior"""
        if self.kind is PriorKind.UNIFORM:
            return self.params[0], self.params[1]
        if self.kind is PriorKind.SCALED_BETA:
            return self.params[2], self.params[3]
        if self.kind is PriorKind.POINT_MASS:
            return self.params[0], self.params[0]
        return float("-inf"), float("inf")

    def mean(self) -> float:
        """Media del prior"""
        if self.kind is PriorKind.SCALED_BETA:
            a, b, lo, hi = self.params
            return lo + (hi - lo) * a / (a + b)
        if self.kind is PriorKind.UNIFORM:
            return 0.5 * (self.params[0] + self.params[1])
        return self.params[0]

    def label(self) -> str:
        """Representación textual, la misma sintaxis que acepta la CLI"""
        args = ",".join(f"{p:g}" for p in self.params)
        return f"{self.kind.value}({args})"


def _default_theta_t(ci_assumed: bool) -> PriorSpec:
    if ci_assumed:
        return PriorSpec.uniform(-1.0, 1.0, target="thetaT")
    return PriorSpec.scaled_beta(5.0, 6.0, -0.4, 1.0, target="thetaT")


@dataclass(frozen=True)
class PriorSet:
    """
    Conjunto de priors del modelo

    Las medias usan Normal(0, 100^2); las desviaciones son uniformes sobre su soporte.
    """
    theta11: PriorSpec = field(default_factory=lambda: PriorSpec.uniform(target="theta11"))
    thetaT: PriorSpec = field(default_factory=lambda: _default_theta_t(False))
    theta10: PriorSpec = field(default_factory=lambda: PriorSpec.uniform(target="theta10"))
    mean_prior: PriorSpec = field(default_factory=PriorSpec.vague_normal)

    def __post_init__(self):
        for name in CORRELATION_TARGETS:
            prior = getattr(self, name)
            if prior.target != name:
                object.__setattr__(self, name, prior.for_target(name))
        if self.mean_prior.kind is not PriorKind.VAGUE_NORMAL:
            raise ValueError("Las medias requieren un prior normal")

    @classmethod
    def default(cls, ci_assumed: bool) -> "PriorSet":
        """Priors por defecto según el supuesto de independencia condicional"""
        return cls(thetaT=_default_theta_t(ci_assumed))

    def with_prior(self, target: str, prior: PriorSpec) -> "PriorSet":
        """Copia reemplazando el prior de una correlación"""
        if target not in CORRELATION_TARGETS:
            raise ValueError(f"Parámetro desconocido: {target}")
        values = {name: getattr(self, name) for name in CORRELATION_TARGETS}
        values[target] = prior.for_target(target)
        return PriorSet(mean_prior=self.mean_prior, **values)

    def correlation(self, target: str) -> PriorSpec:
        return getattr(self, target)


@dataclass(frozen=True)
class ChainConfig:
    """
    Configuración de una cadena MCMC y de la rejilla del griddy Gibbs
    """
    n_iter: int = 3000
    burn_in: int = 500
    seed: int = 0
    grid_coarse: int = 100
    grid_fine: int = 100
    fine_fraction: float = 0.8
    thin_imputed: int = 0

    def __post_init__(self):
        """Validación de la configuración"""
        if self.n_iter <= 0:
            raise ValueError("n_iter debe ser positivo")
        if self.burn_in < 0 or self.burn_in >= self.n_iter:
            raise ValueError("burn_in debe estar en [0, n_iter)")
        if self.grid_coarse < 10 or self.grid_fine < 10:
            raise ValueError("Las rejillas deben tener al menos 10 puntos")
        if not 0.0 < self.fine_fraction <= 1.0:
            raise ValueError("fine_fraction debe estar en (0, 1]")
        if self.thin_imputed < 0:
            raise ValueError("thin_imputed no puede ser negativo")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("La semilla debe ser un entero de 64 bits sin signo")

    @property
    def n_retained(self) -> int:
        """Número de iteraciones retenidas"""
        return self.n_iter - self.burn_in
