"""
Replication Entities - Resultados por réplica y resumen del estudio de simulación
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .model_spec import Design


@dataclass(frozen=True)
class EstimateRecord:
    """Estimación posterior de un estimando en una réplica"""
    mean: float
    sd: float
    q025: float
    q975: float

    def covers(self, value: float) -> bool:
        return self.q025 <= value <= self.q975


@dataclass(frozen=True)
class ReplicationRun:
    """
    Resultado de una réplica: estimaciones posteriores y ajuste con datos completos
    """
    index: int
    seed: int
    estimates: Dict[str, EstimateRecord] = field(default_factory=dict)
    oracle: Dict[str, float] = field(default_factory=dict)
    verdict: Optional[str] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class EstimandSummary:
    """
    Resumen de un estimando a través de las réplicas

    se = promedio de las desviaciones posteriores; sd = desviación de las
    estimaciones puntuales (None con una sola réplica).
    """
    estimand: str
    truth: float
    mean_estimate: float
    bias: float
    se: float
    sd: Optional[float]
    coverage: float
    covers_zero: float
    reported_truth: Optional[float] = None
    oracle_sd: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.coverage <= 1.0 or not 0.0 <= self.covers_zero <= 1.0:
            raise ValueError("Las proporciones de cobertura deben estar en [0, 1]")
        if self.sd is not None and self.sd < 0:
            raise ValueError("La desviación estándar no puede ser negativa")

    def scaled(self) -> Dict[str, float]:
        """Sesgo, SE y SD divididos por la variabilidad del ajuste con datos completos"""
        if not self.oracle_sd:
            return {}
        out = {
            "scaled_bias": self.bias / self.oracle_sd,
            "scaled_se": self.se / self.oracle_sd,
        }
        if self.sd is not None:
            out["scaled_sd"] = self.sd / self.oracle_sd
        return out


@dataclass(frozen=True)
class ReplicationSummary:
    """
    Entidad de dominio: Resumen de un estudio de simulación
    """
    setting: str
    design: Design
    ci_assumed: bool
    algorithm: str
    n: int
    n_reps: int
    estimands: Tuple[EstimandSummary, ...]
    runs: Tuple[ReplicationRun, ...] = ()
    noise: str = "gaussian"

    def __post_init__(self):
        object.__setattr__(self, "design", Design(self.design))
        object.__setattr__(self, "estimands", tuple(self.estimands))
        object.__setattr__(self, "runs", tuple(self.runs))

    @property
    def n_failed(self) -> int:
        return sum(1 for run in self.runs if not run.ok)

    def estimand(self, name: str) -> EstimandSummary:
        for summary in self.estimands:
            if summary.estimand == name:
                return summary
        raise KeyError(f"Unknown estimand '{name}'")

    def to_long_format(self, scaled: bool = False) -> List[dict]:
        """Filas (setting, design, estimand, metric, value)"""
        rows: List[dict] = []
        base = {"setting": self.setting, "design": self.design.label}
        for summary in self.estimands:
            metrics = {
                "truth": summary.truth,
                "estimate": summary.mean_estimate,
                "bias": summary.bias,
                "se": summary.se,
                "coverage": summary.coverage,
                "covers_zero": summary.covers_zero,
            }
            if summary.sd is not None:
                metrics["sd"] = summary.sd
            if summary.reported_truth is not None:
                metrics["reported_truth"] = summary.reported_truth
            if scaled:
                metrics.update(summary.scaled())
            for metric, value in metrics.items():
                rows.append({**base, "estimand": summary.estimand, "metric": metric, "value": float(value)})
        rows.append({**base, "estimand": "all", "metric": "failed", "value": float(self.n_failed)})
        return rows
