"""
Shared helpers for the use cases: dataset resolution and covariate points
"""
import logging
from typing import Callable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from application.dtos.fit_dto import DataSource
from core.exceptions import ConfigurationError
from domain.entities.covariate_model import CovariateModel
from domain.entities.model_spec import Design
from domain.entities.simulation import NoiseFamily, SimSetting
from domain.entities.trial import CounterfactualTable, TrialDataset
from domain.interfaces.dataset_store import IDatasetStore
from domain.interfaces.sampler import ISampler
from domain.services.surrogacy import complete_covariates, covariate_label

logger = logging.getLogger(__name__)

TrialGenerator = Callable[[SimSetting, int, int, Optional[NoiseFamily]], Tuple[CounterfactualTable, TrialDataset]]
SamplerFactory = Callable[[], ISampler]


def load_dataset(
    source: DataSource,
    store: IDatasetStore,
    generator: TrialGenerator,
) -> Tuple[TrialDataset, Optional[CovariateModel]]:
    """Reads the data file or simulates the setting; returns the masked data and the X model if known"""
    if source.data_path is not None:
        return store.read(source.data_path), None
    _, data = generator(source.setting, source.n, source.seed, None)
    logger.info(f"Simulated setting {source.setting.name}: n={source.n}, seed={source.seed}")
    return data, source.setting.covariate_model()


def resolve_sampler(samplers: Mapping[str, SamplerFactory], algorithm: str) -> ISampler:
    try:
        return samplers[algorithm]()
    except KeyError:
        raise ConfigurationError(f"Unknown algorithm '{algorithm}' ({', '.join(samplers)})") from None


def covariate_points(
    design: Design,
    data: TrialDataset,
    at: Sequence[Mapping[str, float]],
) -> Optional[List[Tuple[float, ...]]]:
    """
    Covariate vectors for conditional gamma0(x); None keeps the sampler defaults

    Values outside the observed covariate range are accepted with a warning.
    """
    if not at:
        return None
    if not design.conditional:
        logger.warning(f"Covariate values ignored: {design.label} is marginal")
        return None
    points = [complete_covariates(data.covariate_names, values) for values in at]
    if data.n:
        lo, hi = data.x.min(axis=0), data.x.max(axis=0)
        for point in points:
            if np.any(np.asarray(point) < lo) or np.any(np.asarray(point) > hi):
                logger.warning(
                    f"Covariate point {covariate_label(data.covariate_names, point)} lies outside the observed range"
                )
    return points
