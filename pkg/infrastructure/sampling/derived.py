"""
Derived surrogacy quantities computed from every retained draw
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from domain.services.cep import default_s_grid, fit_cep_line, marginal_cep_values
from domain.services.surrogacy import covariate_label, default_covariate_points

from .model_frame import ModelFrame

logger = logging.getLogger(__name__)

MARGINAL_GRID_POINTS = 41


def gamma1_draws(sds: np.ndarray, corr: np.ndarray) -> np.ndarray:
    """(theta11 sd_T1 - theta10 sd_T0) / sd_S1 for each draw; corr columns (theta11, theta10, thetaT)"""
    return (corr[:, 0] * sds[:, 2] - corr[:, 1] * sds[:, 1]) / sds[:, 0]


def marginal_gamma_draws(frame: ModelFrame, coefs: np.ndarray, sds: np.ndarray,
                         gamma1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    gamma0/gamma1 of the marginal CEP line, averaging over the empirical covariate sample
    """
    nodes = frame.x_all
    log_w = np.full(nodes.shape[0], -np.log(nodes.shape[0]))
    design = np.column_stack([np.ones(nodes.shape[0]), nodes])
    g0 = np.empty(coefs.shape[0])
    g1 = np.empty(coefs.shape[0])
    for i in range(coefs.shape[0]):
        mu_s = design @ coefs[i, 0]
        sd_s = float(np.sqrt(sds[i, 0] ** 2 + np.var(mu_s)))
        grid = default_s_grid(float(np.mean(mu_s)), sd_s, MARGINAL_GRID_POINTS)
        values = marginal_cep_values(
            coefs[i, :, 0], coefs[i, :, 1:], float(sds[i, 0]), float(gamma1[i]), nodes, log_w, grid
        )
        g0[i], g1[i] = fit_cep_line(grid, values)
    return g0, g1


def derive(
    frame: ModelFrame,
    coefs: np.ndarray,
    sds: np.ndarray,
    corr: np.ndarray,
    x_points: Optional[Sequence[Sequence[float]]] = None,
) -> Tuple[Tuple[str, ...], np.ndarray]:
    """
    Derived columns for every draw

    Args:
        coefs: (N, 3, q) mean coefficients of (S1, T0, T1)
        sds: (N, 3) standard deviations
        corr: (N, 3) columns theta11, theta10, thetaT

    Returns:
        names and an (N, m) array: gamma0 and gamma1 for marginal designs;
        gamma0[<x>] per covariate vector, gamma1 and the marginal pair for
        conditional designs
    """
    g1 = gamma1_draws(sds, corr)
    names: List[str] = []
    columns: List[np.ndarray] = []
    if not frame.design.conditional:
        g0 = (coefs[:, 2, 0] - coefs[:, 1, 0]) - g1 * coefs[:, 0, 0]
        return ("gamma0", "gamma1"), np.column_stack([g0, g1])

    points = list(x_points) if x_points is not None else default_covariate_points(frame.covariate_names, frame.x_all)
    for x in points:
        w = np.concatenate([[1.0], np.asarray(x, dtype=np.float64)])
        mu = coefs @ w
        names.append(f"gamma0[{covariate_label(frame.covariate_names, x)}]")
        columns.append((mu[:, 2] - mu[:, 1]) - g1 * mu[:, 0])
    names.append("gamma1")
    columns.append(g1)
    if frame.x_all.shape[0] > 0:
        g0_m, g1_m = marginal_gamma_draws(frame, coefs, sds, g1)
        names.extend(["gamma0_marginal", "gamma1_marginal"])
        columns.extend([g0_m, g1_m])
    if len(set(names)) != len(names):
        raise ValueError(f"Duplicate covariate points requested: {names}")
    return tuple(names), np.column_stack(columns)
