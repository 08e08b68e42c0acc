"""
Trial Entities - Registros del ensayo y tabla contrafactual completa
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DataFormatError, MissingBaseline


def _observed(value: Optional[float]) -> bool:
    return value is not None and not (isinstance(value, float) and np.isnan(value))


@dataclass(frozen=True)
class TrialRecord:
    """
    Entidad de dominio: Un sujeto del ensayo

    Solo se observa el brazo asignado: Z=0 observa T(0); Z=1 observa S(1) y T(1).
    S(0) es 0 por supuesto (biomarcador constante).
    """
    id: str
    z: int
    x: Tuple[float, ...]
    s1: Optional[float] = None
    t0: Optional[float] = None
    t1: Optional[float] = None

    def __post_init__(self):
        """Validación de faltantes consistente con el brazo"""
        if self.z not in (0, 1):
            raise ValueError(f"El brazo debe ser 0 o 1 (sujeto {self.id})")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if self.z == 0:
            ok = _observed(self.t0) and not _observed(self.s1) and not _observed(self.t1)
        else:
            ok = _observed(self.s1) and _observed(self.t1) and not _observed(self.t0)
        if not ok:
            raise ValueError(f"Faltantes inconsistentes con el brazo Z={self.z} (sujeto {self.id})")

    @property
    def s0(self) -> float:
        """Sustituto bajo placebo (constante)"""
        return 0.0

    @property
    def observed_t(self) -> float:
        """Resultado verdadero observado"""
        return float(self.t1 if self.z == 1 else self.t0)


@dataclass(frozen=True)
class ObservedArms:
    """Datos observados separados por brazo (sin ranuras contrafactuales)"""
    x0: np.ndarray
    t0: np.ndarray
    x1: np.ndarray
    s1: np.ndarray
    t1: np.ndarray


@dataclass(frozen=True)
class TrialDataset:
    """
    Entidad de dominio: Conjunto de registros del ensayo (vista enmascarada)

    Almacenamiento columnar; los valores no observados son NaN.
    """
    ids: Tuple[str, ...]
    z: np.ndarray
    x: np.ndarray
    s1: np.ndarray
    t0: np.ndarray
    t1: np.ndarray
    covariate_names: Tuple[str, ...] = ()
    baseline_name: Optional[str] = None

    def __post_init__(self):
        """Validación de forma y faltantes por brazo"""
        n = len(self.ids)
        z = np.asarray(self.z, dtype=np.int64).reshape(n)
        x = np.asarray(self.x, dtype=np.float64).reshape(n, len(self.covariate_names))
        cols = {name: np.asarray(getattr(self, name), dtype=np.float64).reshape(n)
                for name in ("s1", "t0", "t1")}
        object.__setattr__(self, "ids", tuple(str(i) for i in self.ids))
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "covariate_names", tuple(self.covariate_names))
        for name, col in cols.items():
            object.__setattr__(self, name, col)

        if len(set(self.ids)) != n:
            raise DataFormatError("Duplicate subject ids")
        if not np.all(np.isin(z, (0, 1))):
            raise DataFormatError("Arm indicator must be 0 or 1")
        if not np.all(np.isfinite(x)):
            raise DataFormatError("Covariates must be observed for every subject")
        treated = z == 1
        if np.any(np.isnan(cols["s1"][treated])) or np.any(~np.isnan(cols["s1"][~treated])):
            raise DataFormatError("s1 must be observed exactly for z=1")
        if np.any(np.isnan(cols["t1"][treated])) or np.any(~np.isnan(cols["t1"][~treated])):
            raise DataFormatError("t1 must be observed exactly for z=1")
        if np.any(np.isnan(cols["t0"][~treated])) or np.any(~np.isnan(cols["t0"][treated])):
            raise DataFormatError("t0 must be observed exactly for z=0")
        if self.baseline_name is not None and self.baseline_name not in self.covariate_names:
            raise DataFormatError(f"Baseline covariate '{self.baseline_name}' not present")

    @classmethod
    def from_records(
        cls,
        records: Iterable[TrialRecord],
        covariate_names: Sequence[str],
        baseline_name: Optional[str] = None,
    ) -> "TrialDataset":
        """Construye el conjunto columnar desde registros"""
        rows: List[TrialRecord] = list(records)
        p = len(covariate_names)
        for record in rows:
            if len(record.x) != p:
                raise DataFormatError(f"Record {record.id} has {len(record.x)} covariates, expected {p}")

        def col(attr):
            return np.array([np.nan if getattr(r, attr) is None else getattr(r, attr) for r in rows],
                            dtype=np.float64)

        return cls(
            ids=tuple(r.id for r in rows),
            z=np.array([r.z for r in rows], dtype=np.int64),
            x=np.array([r.x for r in rows], dtype=np.float64).reshape(len(rows), p),
            s1=col("s1"),
            t0=col("t0"),
            t1=col("t1"),
            covariate_names=tuple(covariate_names),
            baseline_name=baseline_name,
        )

    def records(self) -> Iterator[TrialRecord]:
        """Itera los registros del ensayo"""
        for i, rid in enumerate(self.ids):
            def opt(col):
                value = col[i]
                return None if np.isnan(value) else float(value)
            yield TrialRecord(
                id=rid, z=int(self.z[i]), x=tuple(self.x[i]),
                s1=opt(self.s1), t0=opt(self.t0), t1=opt(self.t1),
            )

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def n_treated(self) -> int:
        return int(np.sum(self.z == 1))

    @property
    def n_control(self) -> int:
        return int(np.sum(self.z == 0))

    def baseline_index(self) -> int:
        if self.baseline_name is None:
            raise MissingBaseline("Dataset has no baseline covariate for the difference endpoint")
        return self.covariate_names.index(self.baseline_name)

    def observed_arms(self) -> ObservedArms:
        """Solo los valores observados de cada brazo"""
        control = self.z == 0
        treated = ~control
        return ObservedArms(
            x0=self.x[control].copy(),
            t0=self.t0[control].copy(),
            x1=self.x[treated].copy(),
            s1=self.s1[treated].copy(),
            t1=self.t1[treated].copy(),
        )

    def observed_outcome(self) -> np.ndarray:
        """T observado por sujeto"""
        return np.where(self.z == 1, self.t1, self.t0)


@dataclass(frozen=True)
class CounterfactualTable:
    """
    Entidad de dominio: Tabla contrafactual completa (solo para el oráculo)

    Contiene S(1), T(0), T(1) de todos los sujetos y el brazo asignado.
    """
    z: np.ndarray
    x: np.ndarray
    s1: np.ndarray
    t0: np.ndarray
    t1: np.ndarray
    covariate_names: Tuple[str, ...] = ()
    baseline_name: Optional[str] = None

    def __post_init__(self):
        n = int(np.asarray(self.s1).size)
        object.__setattr__(self, "z", np.asarray(self.z, dtype=np.int64).reshape(n))
        object.__setattr__(self, "x", np.asarray(self.x, dtype=np.float64).reshape(n, len(self.covariate_names)))
        for name in ("s1", "t0", "t1"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=np.float64).reshape(n))
        object.__setattr__(self, "covariate_names", tuple(self.covariate_names))

    @property
    def n(self) -> int:
        return int(self.s1.size)

    def mask(self) -> TrialDataset:
        """Vista enmascarada: elimina los contrafactuales no observados"""
        treated = self.z == 1
        return TrialDataset(
            ids=tuple(str(i + 1) for i in range(self.n)),
            z=self.z.copy(),
            x=self.x.copy(),
            s1=np.where(treated, self.s1, np.nan),
            t0=np.where(treated, np.nan, self.t0),
            t1=np.where(treated, self.t1, np.nan),
            covariate_names=self.covariate_names,
            baseline_name=self.baseline_name,
        )
