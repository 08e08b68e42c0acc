"""
Trial data generator: covariates, potential outcomes and the masked trial view
"""
import logging
from typing import Optional, Tuple

import numpy as np
from numpy.random import PCG64, Generator

from core.exceptions import ConfigurationError
from domain.entities.simulation import CovariateKind, NoiseFamily, NoiseKind, SimSetting
from domain.entities.trial import CounterfactualTable, TrialDataset
from domain.services.mvn import cholesky

logger = logging.getLogger(__name__)


def draw_covariates(setting: SimSetting, n: int, rng: Generator) -> np.ndarray:
    """X columns in declaration order; derived squares read the source column"""
    columns = {}
    for source in setting.covariates:
        if source.kind is CovariateKind.NORMAL:
            columns[source.name] = rng.normal(source.params[0], source.params[1], size=n)
        elif source.kind is CovariateKind.BERNOULLI:
            columns[source.name] = (rng.random(n) < source.params[0]).astype(np.float64)
        elif source.kind is CovariateKind.UNIFORM:
            columns[source.name] = rng.uniform(source.params[0], source.params[1], size=n)
        else:
            columns[source.name] = columns[source.source] ** 2
    if not columns:
        return np.empty((n, 0))
    return np.column_stack([columns[name] for name in setting.covariate_names])


def standardized_noise(noise: NoiseFamily, n: int, dim: int, rng: Generator) -> np.ndarray:
    """
    Errors with mean zero and identity covariance

    The t family shares one chi-square draw per row (multivariate t) rescaled
    by sqrt((df - 2) / df); gamma components are independent and centered.
    """
    if noise.kind is NoiseKind.GAUSSIAN:
        return rng.standard_normal((n, dim))
    if noise.kind is NoiseKind.STUDENT_T:
        z = rng.standard_normal((n, dim))
        w = rng.chisquare(noise.df, size=n) / noise.df
        return z / np.sqrt(w)[:, None] * np.sqrt((noise.df - 2.0) / noise.df)
    g = rng.gamma(noise.shape, 1.0, size=(n, dim))
    return (g - noise.shape) / np.sqrt(noise.shape)


def generate(
    setting: SimSetting,
    n: int,
    seed: int,
    noise: Optional[NoiseFamily] = None,
) -> Tuple[CounterfactualTable, TrialDataset]:
    """
    Simulates a two-arm trial

    The first n/2 subjects are assigned Z=0. Returns the complete
    counterfactual table and its masked view.

    Raises:
        ConfigurationError: n odd or below 2
    """
    if n < 2 or n % 2:
        raise ConfigurationError(f"Sample size must be even and at least 2, got {n}")
    noise = noise or setting.noise
    rng = Generator(PCG64(seed))
    spec = setting.model_spec()

    x = draw_covariates(setting, n, rng)
    means = spec.intercepts[None, :] + x @ spec.slopes.T
    factor = cholesky(spec.covariance())
    outcomes = means + standardized_noise(noise, n, 3, rng) @ factor.T

    z = np.repeat([0, 1], n // 2)
    table = CounterfactualTable(
        z=z,
        x=x,
        s1=outcomes[:, 0],
        t0=outcomes[:, 1],
        t1=outcomes[:, 2],
        covariate_names=setting.covariate_names,
        baseline_name=setting.baseline_name,
    )
    logger.debug(f"Generated setting {setting.name}: n={n}, seed={seed}, noise={noise.label}")
    return table, table.mask()
