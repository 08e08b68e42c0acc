"""
Complete-data oracle: least-squares CEP regressions when every potential
outcome is observed
"""
import logging
from typing import Dict, Optional, Sequence

import numpy as np

from domain.entities.model_spec import Design
from domain.entities.trial import CounterfactualTable
from domain.services.surrogacy import covariate_label, default_covariate_points, endpoint_transform
from domain.services.treatment_effect import ols_fit

logger = logging.getLogger(__name__)


def oracle_fit(
    table: CounterfactualTable,
    design: Design,
    x_points: Optional[Sequence[Sequence[float]]] = None,
) -> Dict[str, float]:
    """
    Regresses T(1) - T(0) on S(1) (and X for conditional designs)

    Marginal designs return gamma0 and gamma1. Conditional designs return
    gamma0[<x>] per covariate vector, gamma1, and the marginal pair
    gamma0_marginal / gamma1_marginal. Names match the posterior columns.

    Raises:
        MissingBaseline: difference endpoint without a baseline covariate
        RankDeficient: degenerate complete data
    """
    design = Design(design)
    data = endpoint_transform(table, design.endpoint)
    effect = data.t1 - data.t0
    marginal = ols_fit(effect, {"s1": data.s1})
    if not design.conditional:
        return {"gamma0": marginal.params["intercept"], "gamma1": marginal.params["s1"]}

    columns = {"s1": data.s1}
    columns.update({f"x:{name}": data.x[:, j] for j, name in enumerate(data.covariate_names)})
    fit = ols_fit(effect, columns)
    slopes = np.array([fit.params[f"x:{name}"] for name in data.covariate_names])
    points = list(x_points) if x_points is not None else default_covariate_points(data.covariate_names, data.x)
    out: Dict[str, float] = {}
    for x in points:
        label = covariate_label(data.covariate_names, x)
        out[f"gamma0[{label}]"] = float(fit.params["intercept"] + slopes @ np.asarray(x, dtype=np.float64))
    out["gamma1"] = fit.params["s1"]
    out["gamma0_marginal"] = marginal.params["intercept"]
    out["gamma1_marginal"] = marginal.params["s1"]
    logger.debug(f"Oracle ({design.label}, n={table.n}): {out}")
    return out
