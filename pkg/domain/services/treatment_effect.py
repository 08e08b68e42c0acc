"""
Treatment Effect Service - Regresiones de mínimos cuadrados (efecto del
tratamiento y ajuste con contrafactuales completos)
"""
import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
import statsmodels.api as sm

from core.exceptions import RankDeficient
from domain.entities.metrics import TreatmentEffect
from domain.entities.model_spec import Design
from domain.entities.trial import TrialDataset
from domain.services.surrogacy import endpoint_transform

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OlsFit:
    """Coeficientes, errores estándar e intervalos al 95%"""
    names: Tuple[str, ...]
    params: Dict[str, float]
    bse: Dict[str, float]
    conf_int: Dict[str, Tuple[float, float]]
    n: int


def ols_fit(y, columns: Dict[str, np.ndarray]) -> OlsFit:
    """
    Mínimos cuadrados ordinarios con intercepto

    Raises:
        RankDeficient: si la matriz de diseño no tiene rango completo
    """
    y = np.asarray(y, dtype=np.float64)
    names = ("intercept",) + tuple(columns)
    exog = np.column_stack([np.ones_like(y)] + [np.asarray(c, dtype=np.float64) for c in columns.values()])
    if exog.shape[0] <= exog.shape[1] or np.linalg.matrix_rank(exog) < exog.shape[1]:
        raise RankDeficient(f"Design matrix with columns {list(names)} is rank deficient (n={exog.shape[0]})")
    result = sm.OLS(y, exog).fit()
    bounds = np.asarray(result.conf_int(alpha=0.05))
    return OlsFit(
        names=names,
        params={n: float(v) for n, v in zip(names, result.params)},
        bse={n: float(v) for n, v in zip(names, result.bse)},
        conf_int={n: (float(lo), float(hi)) for n, (lo, hi) in zip(names, bounds)},
        n=int(y.size),
    )


def treatment_effect(dataset: TrialDataset, design: Design) -> TreatmentEffect:
    """
    Efecto del tratamiento sobre el resultado observado

    Diseño 1: T ~ 1 + Z; 2: T ~ 1 + Z + X; 3: T^D ~ 1 + Z; 4: T^D ~ 1 + Z + X
    """
    design = Design(design)
    data = endpoint_transform(dataset, design.endpoint)
    columns = {"z": data.z.astype(np.float64)}
    if design.conditional:
        columns.update({name: data.x[:, j] for j, name in enumerate(data.covariate_names)})
    fit = ols_fit(data.observed_outcome(), columns)
    lo, hi = fit.conf_int["z"]
    logger.debug(f"Treatment effect ({design.label}): {fit.params['z']:.4f} (se {fit.bse['z']:.4f})")
    return TreatmentEffect(
        design=int(design),
        estimate=fit.params["z"],
        se=fit.bse["z"],
        ci_low=lo,
        ci_high=hi,
        n=fit.n,
    )
